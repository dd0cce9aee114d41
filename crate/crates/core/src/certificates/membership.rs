//! Membership in the sets of 2-powers of `t` and of `u`.
//!
//! `w = t^(2^s)` is decided through `w = t^(4^k)` (the certificate set) or
//! `w = z^2` with `z = t^(4^k)`. The `4^k` test runs two ways: by reading off
//! `k` and building a certificate, and by asking the Artin–Schreier solver
//! whether witnesses exist at all. The two must agree.

use super::s1::{build_s1_certificate_over, check_s1_certificate};
use super::t1::{build_t1_certificate, check_t1_certificate};
use super::{compute_u, is_2power_of, Base, CertError};
use crate::algebra::{FieldElem, RatFunc};
use crate::artin_schreier::is_as4_image;

/// `k` with `w = b^(4^k)`, confirmed by a verified certificate.
pub fn s1_by_certificate(w: &RatFunc, base: Base, v_set: &[FieldElem]) -> Option<u32> {
    let b = base.value(w.field());
    let r = is_2power_of(&b, w)?;
    if r % 2 != 0 {
        return None;
    }
    let cert = build_s1_certificate_over(w.field(), base, r / 2, v_set);
    check_s1_certificate(&cert).is_ok().then_some(r / 2)
}

fn shift(a: &RatFunc, c: FieldElem) -> RatFunc {
    a + &RatFunc::constant(c)
}

fn pair_solvable(w: &RatFunc, b: &RatFunc, c: FieldElem, c_prime: FieldElem, d: FieldElem, d_prime: FieldElem) -> bool {
    let Ok(wdd) = shift(w, d).try_div(&shift(w, d_prime)) else { return false };
    let Ok(wdd_inv) = wdd.inv() else { return false };
    let tcc = &shift(b, c) / &shift(b, c_prime);
    let tcc_inv = tcc.inv().expect("nonzero");
    is_as4_image(&(&wdd + &tcc)) && is_as4_image(&(&wdd_inv + &tcc_inv))
}

/// Whether witnesses for `w` exist, decided by the Artin–Schreier solver
/// with the quantifiers over `V` searched exhaustively.
pub fn s1_by_solver(w: &RatFunc, base: Base, v_set: &[FieldElem]) -> bool {
    let b = base.value(w.field());
    if !is_as4_image(&(w + &b)) {
        return false;
    }
    let Ok(w_inv) = w.inv() else { return false };
    if !is_as4_image(&(&w_inv + &b.inv().expect("nonzero"))) {
        return false;
    }
    v_set.iter().all(|&c| {
        c.frobenius_orbit().into_iter().any(|d| {
            v_set.iter().all(|&c_prime| {
                c_prime
                    .frobenius_orbit()
                    .into_iter()
                    .any(|d_prime| pair_solvable(w, &b, c, c_prime, d, d_prime))
            })
        })
    })
}

/// `k` with `w = t^(4^k)`; both decision paths must agree.
pub fn member_s1(w: &RatFunc, v_set: &[FieldElem]) -> Result<Option<u32>, CertError> {
    let by_cert = s1_by_certificate(w, Base::T, v_set);
    let by_solver = s1_by_solver(w, Base::T, v_set);
    if by_cert.is_some() != by_solver {
        return Err(CertError::PathDisagreement(w.clone()));
    }
    Ok(by_cert)
}

/// `s` with `w = t^(2^s)`.
pub fn member_s(w: &RatFunc, v_set: &[FieldElem]) -> Result<Option<u32>, CertError> {
    if w.is_zero() {
        return Err(CertError::ZeroArgument);
    }
    if let Some(k) = member_s1(w, v_set)? {
        return Ok(Some(2 * k));
    }
    match w.sqrt() {
        Some(z) => Ok(member_s1(&z, v_set)?.map(|k| 2 * k + 1)),
        None => Ok(None),
    }
}

/// `k` with `w = u^(4^k)`, confirmed by a verified certificate.
pub fn member_t1(x: &RatFunc, w: &RatFunc, v_set: &[FieldElem]) -> Result<Option<u32>, CertError> {
    let u = compute_u(x, false)?;
    let Some(r) = is_2power_of(&u, w) else { return Ok(None) };
    if r % 2 != 0 {
        return Ok(None);
    }
    let cert = build_t1_certificate(x, r / 2, v_set)?;
    debug_assert_eq!(cert.v, *w);
    Ok(check_t1_certificate(&cert).is_ok().then_some(r / 2))
}

/// `s` with `w = u^(2^s)`.
pub fn member_t(x: &RatFunc, w: &RatFunc, v_set: &[FieldElem]) -> Result<Option<u32>, CertError> {
    if w.is_zero() {
        return Err(CertError::ZeroArgument);
    }
    if let Some(k) = member_t1(x, w, v_set)? {
        return Ok(Some(2 * k));
    }
    match w.sqrt() {
        Some(z) => Ok(member_t1(x, &z, v_set)?.map(|k| 2 * k + 1)),
        None => Ok(None),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{make_constant_set_v, FieldSpec};
    use crate::expr::parse;

    fn f() -> FieldSpec {
        FieldSpec::gf256()
    }

    fn p(s: &str) -> RatFunc {
        parse(s, f()).unwrap()
    }

    #[test]
    fn powers_of_t() {
        let v = make_constant_set_v(f(), 4).unwrap();
        assert_eq!(member_s(&p("t^8"), &v), Ok(Some(3)));
        assert_eq!(member_s(&p("t^6"), &v), Ok(None));
        assert_eq!(member_s(&p("t"), &v), Ok(Some(0)));
        assert_eq!(member_s(&p("t^16"), &v), Ok(Some(4)));
        assert_eq!(member_s(&p("t^4 + 1"), &v), Ok(None));
        assert_eq!(member_s(&p("0"), &v), Err(CertError::ZeroArgument));
    }

    #[test]
    fn mirrored_base() {
        let v = crate::algebra::inverted_constant_set(&make_constant_set_v(f(), 3).unwrap());
        assert_eq!(s1_by_certificate(&p("1/t^4"), Base::InvT, &v), Some(1));
        assert!(s1_by_solver(&p("1/t^4"), Base::InvT, &v));
        assert!(!s1_by_solver(&p("1/t^2"), Base::InvT, &v));
    }

    #[test]
    fn powers_of_u() {
        let v = make_constant_set_v(f(), 3).unwrap();
        let x = p("t + #x3");
        let u = compute_u(&x, false).unwrap();
        assert_eq!(member_t(&x, &u, &v), Ok(Some(0)));
        assert_eq!(member_t(&x, &u.square(), &v), Ok(Some(1)));
        assert_eq!(member_t(&x, &u.pow(3), &v), Ok(None));
        assert_eq!(member_t(&x, &u.frobenius_pow(3), &v), Ok(Some(3)));
    }
}
