//! Certificates that `v = u^(4^s)` for `u = (x^2 + b^2 + b)/(x^2 + b)`.
//!
//! With `u_cc'g = (u^g + c)/(u^g + c')` and `v_dd'g = (v^g + d)/(v^g + d')`,
//! for `e, g` in `{-1, 1}`:
//!
//! ```text
//! G1: v_dd'g^e + u_cc'g^e = sigma^4 + sigma
//! G3: v_dd'g^(2e) b^(4^s) + u_cc'g^(2e) b = lambda^4 + lambda
//! G5: (u^g + c)^e + (v^g + d)^e = mu^4 + mu
//! ```
//!
//! One `s` is shared by every index.

use alloc::vec::Vec;
use core::fmt;

use super::{compute_u_over, distinct_orbits, telescope, Base};
use crate::algebra::{FieldElem, FieldSpec, RatFunc};

/// The order in which `e` and `g` are enumerated.
pub const SIGNS: [i8; 2] = [1, -1];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TEntry {
    pub c: FieldElem,
    pub c_prime: FieldElem,
    pub d: FieldElem,
    pub d_prime: FieldElem,
    pub e: i8,
    pub g: i8,
    pub sigma: RatFunc,
    pub lambda: RatFunc,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MuEntry {
    pub c: FieldElem,
    pub d: FieldElem,
    pub e: i8,
    pub g: i8,
    pub mu: RatFunc,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TCertificate {
    pub field: FieldSpec,
    pub base: Base,
    pub v_set: Vec<FieldElem>,
    pub x: RatFunc,
    pub v: RatFunc,
    pub s: u32,
    /// Ordered by `(c, c', e, g)` with `c, c'` in `v_set` order and signs
    /// in [`SIGNS`] order.
    pub entries: Vec<TEntry>,
    /// Ordered by `(c, e, g)`.
    pub mu: Vec<MuEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TFailure {
    ConstantSet,
    ZeroV,
    /// `x^2 + b` vanishes, so `u` is undefined.
    Degenerate,
    UnexpectedEntry { c: FieldElem, c_prime: FieldElem, e: i8, g: i8 },
    MissingEntry { c: FieldElem, c_prime: FieldElem, e: i8, g: i8 },
    DuplicateEntry { c: FieldElem, c_prime: FieldElem, e: i8, g: i8 },
    MissingMu { c: FieldElem, e: i8, g: i8 },
    DuplicateMu { c: FieldElem, e: i8, g: i8 },
    InconsistentD { c: FieldElem },
    InconsistentDPrime { c: FieldElem, c_prime: FieldElem },
    OrbitD { c: FieldElem, d: FieldElem },
    OrbitDPrime { c_prime: FieldElem, d_prime: FieldElem },
    G1 { c: FieldElem, c_prime: FieldElem, e: i8, g: i8 },
    G3 { c: FieldElem, c_prime: FieldElem, e: i8, g: i8 },
    G5 { c: FieldElem, e: i8, g: i8 },
}

impl fmt::Display for TFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use TFailure::*;
        match self {
            ConstantSet => write!(f, "constant set repeats a Frobenius orbit"),
            ZeroV => write!(f, "v is zero"),
            Degenerate => write!(f, "u is undefined: x^2 + t vanishes"),
            UnexpectedEntry { c, c_prime, e, g } => {
                write!(f, "entry ({c}, {c_prime}, {e}, {g}) is outside the index set")
            }
            MissingEntry { c, c_prime, e, g } => write!(f, "no entry for ({c}, {c_prime}, {e}, {g})"),
            DuplicateEntry { c, c_prime, e, g } => {
                write!(f, "two entries for ({c}, {c_prime}, {e}, {g})")
            }
            MissingMu { c, e, g } => write!(f, "no mu for ({c}, {e}, {g})"),
            DuplicateMu { c, e, g } => write!(f, "two mu entries for ({c}, {e}, {g})"),
            InconsistentD { c } => write!(f, "entries for c = {c} choose different d"),
            InconsistentDPrime { c, c_prime } => {
                write!(f, "entries for ({c}, {c_prime}) choose different d'")
            }
            OrbitD { c, d } => write!(f, "d = {d} is not in the orbit of {c}"),
            OrbitDPrime { c_prime, d_prime } => {
                write!(f, "d' = {d_prime} is not in the orbit of {c_prime}")
            }
            G1 { c, c_prime, e, g } => write!(
                f,
                "(G1) v_dd'g^e + u_cc'g^e = sigma^4 + sigma fails at ({c}, {c_prime}, {e}, {g})"
            ),
            G3 { c, c_prime, e, g } => write!(
                f,
                "(G3) v_dd'g^2e t^(4^s) + u_cc'g^2e t = lambda^4 + lambda fails at ({c}, {c_prime}, {e}, {g})"
            ),
            G5 { c, e, g } => {
                write!(f, "(G5) (u^g + c)^e + (v^g + d)^e = mu^4 + mu fails at ({c}, {e}, {g})")
            }
        }
    }
}

fn signed_pow(a: &RatFunc, k: i8) -> Option<RatFunc> {
    a.powi(k as i64).ok()
}

/// `(a^g + c) / (a^g + c')`, or `None` if something is undefined.
fn shifted_ratio(a: &RatFunc, g: i8, c: FieldElem, c_prime: FieldElem) -> Option<RatFunc> {
    let ag = signed_pow(a, g)?;
    let num = &ag + &RatFunc::constant(c);
    let den = &ag + &RatFunc::constant(c_prime);
    num.try_div(&den).ok()
}

/// The certificate for `v = u^(4^s)` built from telescoping witnesses.
pub fn build_t1_certificate(
    x: &RatFunc,
    s: u32,
    v_set: &[FieldElem],
) -> Result<TCertificate, super::CertError> {
    build_t1_certificate_over(x, Base::T, s, v_set)
}

pub fn build_t1_certificate_over(
    x: &RatFunc,
    base: Base,
    s: u32,
    v_set: &[FieldElem],
) -> Result<TCertificate, super::CertError> {
    let field = x.field();
    let b = base.value(field);
    let u = compute_u_over(x, base)?;
    let v = u.frobenius_pow(2 * s);
    let power = |c: FieldElem| c.frobenius_pow(2 * s as u64);
    let mut entries = Vec::new();
    for &c in v_set {
        for &c_prime in v_set {
            for e in SIGNS {
                for g in SIGNS {
                    let ucc = shifted_ratio(&u, g, c, c_prime).expect("u is nonconstant");
                    let ue = signed_pow(&ucc, e).expect("u is nonconstant");
                    entries.push(TEntry {
                        c,
                        c_prime,
                        d: power(c),
                        d_prime: power(c_prime),
                        e,
                        g,
                        sigma: telescope(&ue, s),
                        lambda: telescope(&(&ue.square() * &b), s),
                    });
                }
            }
        }
    }
    let mut mu = Vec::new();
    for &c in v_set {
        for e in SIGNS {
            for g in SIGNS {
                let ug = signed_pow(&u, g).expect("u is nonconstant");
                let base_term = signed_pow(&(&ug + &RatFunc::constant(c)), e).expect("u is nonconstant");
                mu.push(MuEntry { c, d: power(c), e, g, mu: telescope(&base_term, s) });
            }
        }
    }
    Ok(TCertificate { field, base, v_set: v_set.to_vec(), x: x.clone(), v, s, entries, mu })
}

fn is_as4_pair(lhs: &RatFunc, z: &RatFunc) -> bool {
    *lhs == &z.frobenius_pow(2) + z
}

fn check_shape(cert: &TCertificate) -> Result<Vec<&TEntry>, TFailure> {
    let v_set = &cert.v_set;
    for en in &cert.entries {
        if !v_set.contains(&en.c) || !v_set.contains(&en.c_prime) || !SIGNS.contains(&en.e) || !SIGNS.contains(&en.g) {
            return Err(TFailure::UnexpectedEntry { c: en.c, c_prime: en.c_prime, e: en.e, g: en.g });
        }
    }
    let mut ordered = Vec::with_capacity(cert.entries.len());
    for &c in v_set {
        let mut chosen_d: Option<FieldElem> = None;
        for &c_prime in v_set {
            let mut chosen_dp: Option<FieldElem> = None;
            for e in SIGNS {
                for g in SIGNS {
                    let mut hits = cert
                        .entries
                        .iter()
                        .filter(|en| en.c == c && en.c_prime == c_prime && en.e == e && en.g == g);
                    let en = hits.next().ok_or(TFailure::MissingEntry { c, c_prime, e, g })?;
                    if hits.next().is_some() {
                        return Err(TFailure::DuplicateEntry { c, c_prime, e, g });
                    }
                    if *chosen_d.get_or_insert(en.d) != en.d {
                        return Err(TFailure::InconsistentD { c });
                    }
                    if *chosen_dp.get_or_insert(en.d_prime) != en.d_prime {
                        return Err(TFailure::InconsistentDPrime { c, c_prime });
                    }
                    if !c.same_orbit(en.d) {
                        return Err(TFailure::OrbitD { c, d: en.d });
                    }
                    if !c_prime.same_orbit(en.d_prime) {
                        return Err(TFailure::OrbitDPrime { c_prime, d_prime: en.d_prime });
                    }
                    ordered.push(en);
                }
            }
        }
        for e in SIGNS {
            for g in SIGNS {
                let mut hits = cert.mu.iter().filter(|m| m.c == c && m.e == e && m.g == g);
                let m = hits.next().ok_or(TFailure::MissingMu { c, e, g })?;
                if hits.next().is_some() {
                    return Err(TFailure::DuplicateMu { c, e, g });
                }
                if chosen_d.is_some_and(|d| d != m.d) {
                    return Err(TFailure::InconsistentD { c });
                }
            }
        }
    }
    Ok(ordered)
}

/// Checks every equation exactly; the error names the first failure in the
/// order: side conditions, family shape, G1 and G3 entry by entry, then G5.
pub fn check_t1_certificate(cert: &TCertificate) -> Result<(), TFailure> {
    if !distinct_orbits(&cert.v_set) {
        return Err(TFailure::ConstantSet);
    }
    if cert.v.is_zero() {
        return Err(TFailure::ZeroV);
    }
    let u = compute_u_over(&cert.x, cert.base).map_err(|_| TFailure::Degenerate)?;
    let b = cert.base.value(cert.field);
    let b_big = b.frobenius_pow(2 * cert.s);
    let ordered = check_shape(cert)?;
    for en in ordered {
        let (c, c_prime, e, g) = (en.c, en.c_prime, en.e, en.g);
        let g1 = TFailure::G1 { c, c_prime, e, g };
        let ucc = shifted_ratio(&u, g, c, c_prime).ok_or(g1.clone())?;
        let vdd = shifted_ratio(&cert.v, g, en.d, en.d_prime).ok_or(g1.clone())?;
        let ue = signed_pow(&ucc, e).ok_or(g1.clone())?;
        let ve = signed_pow(&vdd, e).ok_or(g1.clone())?;
        if !is_as4_pair(&(&ve + &ue), &en.sigma) {
            return Err(g1);
        }
        let lhs = &(&ve.square() * &b_big) + &(&ue.square() * &b);
        if !is_as4_pair(&lhs, &en.lambda) {
            return Err(TFailure::G3 { c, c_prime, e, g });
        }
    }
    for &c in &cert.v_set {
        for e in SIGNS {
            for g in SIGNS {
                let m = cert.mu.iter().find(|m| m.c == c && m.e == e && m.g == g).expect("shape checked");
                let g5 = TFailure::G5 { c, e, g };
                let side = |a: &RatFunc, k: FieldElem| {
                    let ag = signed_pow(a, g)?;
                    signed_pow(&(&ag + &RatFunc::constant(k)), e)
                };
                let lhs_u = side(&u, c).ok_or(g5.clone())?;
                let lhs_v = side(&cert.v, m.d).ok_or(g5.clone())?;
                if !is_as4_pair(&(&lhs_u + &lhs_v), &m.mu) {
                    return Err(g5);
                }
            }
        }
    }
    Ok(())
}

pub fn verify_t1_certificate(cert: &TCertificate) -> bool {
    check_t1_certificate(cert).is_ok()
}
