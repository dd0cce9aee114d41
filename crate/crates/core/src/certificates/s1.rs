//! Certificates that `w = b^(4^s)` for the base `b` (`t` or `1/t`).
//!
//! The equations, with `t_cc' = (b + c)/(b + c')` and
//! `w_dd' = (w + d)/(w + d')`:
//!
//! ```text
//! F1: w + b = u^4 + u
//! F2: 1/w + 1/b = v^4 + v
//! F4: w_dd' + t_cc' = u_dd'^4 + u_dd'
//! F3: 1/w_dd' + 1/t_cc' = v_dd'^4 + v_dd'
//! ```
//!
//! for every `c` in `V` some `d` in the orbit of `c`, and for every `c'`
//! some `d'` in the orbit of `c'`.

use alloc::vec::Vec;
use core::fmt;

use super::{distinct_orbits, telescope, Base};
use crate::algebra::{FieldElem, FieldSpec, RatFunc};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SFamilyEntry {
    pub c: FieldElem,
    pub c_prime: FieldElem,
    pub d: FieldElem,
    pub d_prime: FieldElem,
    pub u: RatFunc,
    pub v: RatFunc,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SCertificate {
    pub field: FieldSpec,
    pub base: Base,
    pub v_set: Vec<FieldElem>,
    pub w: RatFunc,
    pub s: u32,
    pub u: RatFunc,
    pub v: RatFunc,
    /// One entry per ordered pair of `v_set`, row by row.
    pub family: Vec<SFamilyEntry>,
}

/// The first equation or side condition that fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SFailure {
    /// `v_set` repeats a Frobenius orbit.
    ConstantSet,
    F1,
    F2,
    MissingEntry { c: FieldElem, c_prime: FieldElem },
    DuplicateEntry { c: FieldElem, c_prime: FieldElem },
    UnexpectedEntry { c: FieldElem, c_prime: FieldElem },
    /// Entries for the same `c` choose different `d`.
    InconsistentD { c: FieldElem },
    OrbitD { c: FieldElem, d: FieldElem },
    OrbitDPrime { c_prime: FieldElem, d_prime: FieldElem },
    F4 { c: FieldElem, c_prime: FieldElem },
    F3 { c: FieldElem, c_prime: FieldElem },
}

impl fmt::Display for SFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SFailure::ConstantSet => write!(f, "constant set repeats a Frobenius orbit"),
            SFailure::F1 => write!(f, "(F1) w + t = u^4 + u fails"),
            SFailure::F2 => write!(f, "(F2) 1/w + 1/t = v^4 + v fails"),
            SFailure::MissingEntry { c, c_prime } => write!(f, "no entry for ({c}, {c_prime})"),
            SFailure::DuplicateEntry { c, c_prime } => write!(f, "two entries for ({c}, {c_prime})"),
            SFailure::UnexpectedEntry { c, c_prime } => {
                write!(f, "entry ({c}, {c_prime}) is outside the constant set")
            }
            SFailure::InconsistentD { c } => write!(f, "entries for c = {c} choose different d"),
            SFailure::OrbitD { c, d } => write!(f, "d = {d} is not in the orbit of {c}"),
            SFailure::OrbitDPrime { c_prime, d_prime } => {
                write!(f, "d' = {d_prime} is not in the orbit of {c_prime}")
            }
            SFailure::F4 { c, c_prime } => {
                write!(f, "(F4) w_dd' + t_cc' = u_dd'^4 + u_dd' fails at ({c}, {c_prime})")
            }
            SFailure::F3 { c, c_prime } => {
                write!(f, "(F3) 1/w_dd' + 1/t_cc' = v_dd'^4 + v_dd' fails at ({c}, {c_prime})")
            }
        }
    }
}

fn base_shift(b: &RatFunc, c: FieldElem) -> RatFunc {
    b + &RatFunc::constant(c)
}

/// `(b + c)/(b + c')`; the base is transcendental so the denominator is
/// never zero.
fn t_pair(b: &RatFunc, c: FieldElem, c_prime: FieldElem) -> RatFunc {
    &base_shift(b, c) / &base_shift(b, c_prime)
}

/// The certificate for `w = b^(4^s)` with `d = c^(4^s)`, `d' = c'^(4^s)` and
/// telescoping witnesses.
pub fn build_s1_certificate(field: FieldSpec, s: u32, v_set: &[FieldElem]) -> SCertificate {
    build_s1_certificate_over(field, Base::T, s, v_set)
}

pub fn build_s1_certificate_over(
    field: FieldSpec,
    base: Base,
    s: u32,
    v_set: &[FieldElem],
) -> SCertificate {
    let b = base.value(field);
    let b_inv = b.inv().expect("base is nonzero");
    let mut family = Vec::with_capacity(v_set.len() * v_set.len());
    for &c in v_set {
        for &c_prime in v_set {
            let tcc = t_pair(&b, c, c_prime);
            family.push(SFamilyEntry {
                c,
                c_prime,
                d: c.frobenius_pow(2 * s as u64),
                d_prime: c_prime.frobenius_pow(2 * s as u64),
                u: telescope(&tcc, s),
                v: telescope(&tcc.inv().expect("nonzero"), s),
            });
        }
    }
    SCertificate {
        field,
        base,
        v_set: v_set.to_vec(),
        w: b.frobenius_pow(2 * s),
        s,
        u: telescope(&b, s),
        v: telescope(&b_inv, s),
        family,
    }
}

fn is_as4_pair(lhs: &RatFunc, z: &RatFunc) -> bool {
    *lhs == &z.frobenius_pow(2) + z
}

/// Checks coverage, choice consistency and orbit membership of the family;
/// returns the entries in `v_set` row order.
pub(crate) fn check_family_shape<'a, E>(
    v_set: &[FieldElem],
    entries: &'a [E],
    key: impl Fn(&E) -> (FieldElem, FieldElem, FieldElem, FieldElem),
) -> Result<Vec<&'a E>, SFailure> {
    for e in entries {
        let (c, c_prime, _, _) = key(e);
        if !v_set.contains(&c) || !v_set.contains(&c_prime) {
            return Err(SFailure::UnexpectedEntry { c, c_prime });
        }
    }
    let mut ordered = Vec::with_capacity(v_set.len() * v_set.len());
    for &c in v_set {
        let mut chosen: Option<FieldElem> = None;
        for &c_prime in v_set {
            let mut hits = entries.iter().filter(|e| {
                let (a, b, _, _) = key(e);
                a == c && b == c_prime
            });
            let entry = hits.next().ok_or(SFailure::MissingEntry { c, c_prime })?;
            if hits.next().is_some() {
                return Err(SFailure::DuplicateEntry { c, c_prime });
            }
            let (_, _, d, d_prime) = key(entry);
            match chosen {
                None => chosen = Some(d),
                Some(prev) if prev != d => return Err(SFailure::InconsistentD { c }),
                Some(_) => {}
            }
            if !c.same_orbit(d) {
                return Err(SFailure::OrbitD { c, d });
            }
            if !c_prime.same_orbit(d_prime) {
                return Err(SFailure::OrbitDPrime { c_prime, d_prime });
            }
            ordered.push(entry);
        }
    }
    Ok(ordered)
}

/// Checks every equation exactly; the error names the first failure in the
/// order F1, F2, family shape, then F4 and F3 entry by entry.
pub fn check_s1_certificate(cert: &SCertificate) -> Result<(), SFailure> {
    if !distinct_orbits(&cert.v_set) {
        return Err(SFailure::ConstantSet);
    }
    let b = cert.base.value(cert.field);
    let b_inv = b.inv().expect("base is nonzero");
    if !is_as4_pair(&(&cert.w + &b), &cert.u) {
        return Err(SFailure::F1);
    }
    let w_inv = cert.w.inv().map_err(|_| SFailure::F2)?;
    if !is_as4_pair(&(&w_inv + &b_inv), &cert.v) {
        return Err(SFailure::F2);
    }
    let ordered = check_family_shape(&cert.v_set, &cert.family, |e| (e.c, e.c_prime, e.d, e.d_prime))?;
    for e in ordered {
        let (c, c_prime) = (e.c, e.c_prime);
        let tcc = t_pair(&b, c, c_prime);
        let num = base_shift(&cert.w, e.d);
        let den = base_shift(&cert.w, e.d_prime);
        let wdd = num.try_div(&den).map_err(|_| SFailure::F4 { c, c_prime })?;
        if !is_as4_pair(&(&wdd + &tcc), &e.u) {
            return Err(SFailure::F4 { c, c_prime });
        }
        let wdd_inv = wdd.inv().map_err(|_| SFailure::F3 { c, c_prime })?;
        let tcc_inv = tcc.inv().expect("nonzero");
        if !is_as4_pair(&(&wdd_inv + &tcc_inv), &e.v) {
            return Err(SFailure::F3 { c, c_prime });
        }
    }
    Ok(())
}

pub fn verify_s1_certificate(cert: &SCertificate) -> bool {
    check_s1_certificate(cert).is_ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{inverted_constant_set, make_constant_set_v};
    use crate::expr::parse;

    fn f() -> FieldSpec {
        FieldSpec::gf256()
    }

    fn vset() -> Vec<FieldElem> {
        make_constant_set_v(f(), 4).unwrap()
    }

    #[test]
    fn s_zero_has_zero_witnesses() {
        let cert = build_s1_certificate(f(), 0, &vset());
        assert_eq!(cert.w, RatFunc::t(f()));
        assert!(cert.u.is_zero() && cert.v.is_zero());
        assert!(cert.family.iter().all(|e| e.u.is_zero() && e.v.is_zero()));
        assert!(verify_s1_certificate(&cert));
    }

    #[test]
    fn s_one_witnesses() {
        let cert = build_s1_certificate(f(), 1, &vset());
        assert_eq!(cert.w, parse("t^4", f()).unwrap());
        assert_eq!(cert.u, RatFunc::t(f()));
        assert_eq!(cert.v, parse("1/t", f()).unwrap());
        assert_eq!(check_s1_certificate(&cert), Ok(()));
    }

    #[test]
    fn s_two_family_entries_are_frobenius_images() {
        let cert = build_s1_certificate(f(), 2, &vset());
        let t = RatFunc::t(f());
        for e in &cert.family {
            assert_eq!(e.d, e.c.pow(16));
            let wdd = &(&cert.w + &RatFunc::constant(e.d)) / &(&cert.w + &RatFunc::constant(e.d_prime));
            assert_eq!(wdd, t_pair(&t, e.c, e.c_prime).frobenius_pow(4));
        }
        assert!(verify_s1_certificate(&cert));
    }

    #[test]
    fn round_trip_both_bases() {
        let v = vset();
        for s in 0..=4 {
            assert!(verify_s1_certificate(&build_s1_certificate(f(), s, &v)));
            let inv = build_s1_certificate_over(f(), Base::InvT, s, &inverted_constant_set(&v));
            assert_eq!(check_s1_certificate(&inv), Ok(()));
        }
    }

    #[test]
    fn tampering_is_reported() {
        let mut cert = build_s1_certificate(f(), 2, &vset());
        cert.w = parse("t^5", f()).unwrap();
        assert_eq!(check_s1_certificate(&cert), Err(SFailure::F1));

        let mut cert = build_s1_certificate(f(), 2, &vset());
        let outside = f().elem(0x03).unwrap();
        let c_prime = cert.family[1].c_prime;
        assert!(!c_prime.same_orbit(outside));
        cert.family[1].d_prime = outside;
        assert_eq!(
            check_s1_certificate(&cert),
            Err(SFailure::OrbitDPrime { c_prime, d_prime: outside })
        );

        let mut cert = build_s1_certificate(f(), 2, &vset());
        cert.v_set.push(cert.v_set[1].square());
        assert_eq!(check_s1_certificate(&cert), Err(SFailure::ConstantSet));
    }
}
