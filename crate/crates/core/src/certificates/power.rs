//! The auxiliary functions `u`, `v` attached to a pair `(x, y)` and the test
//! for `y = x^(2^s)` through them.
//!
//! With `u = (x^2 + b^2 + b) / (x^2 + b)` and
//! `v = (y^2 + b^(2^(s+1)) + b^(2^s)) / (y^2 + b^(2^s))` for `b = t`, and the
//! same with `b = 1/t` giving `u~`, `v~`: `y = x^(2^s)` holds exactly when
//! `v` is a 2-power of `u` and `v~` is a 2-power of `u~`.

use alloc::vec::Vec;

use super::{Base, CertError};
use crate::algebra::{FieldSpec, RatFunc};

/// `sum_{i<s} a^(4^i)`, so that `T^4 + T = a^(4^s) + a`. Zero when `s = 0`.
pub fn telescope(a: &RatFunc, s: u32) -> RatFunc {
    let mut acc = RatFunc::zero(a.field());
    let mut term = a.clone();
    for i in 0..s {
        acc += &term;
        if i + 1 < s {
            term = term.frobenius_pow(2);
        }
    }
    acc
}

/// `(x^2 + b^2 + b) / (x^2 + b)` with `b = t`, or `b = 1/t` when `inverted`.
pub fn compute_u(x: &RatFunc, inverted: bool) -> Result<RatFunc, CertError> {
    compute_u_over(x, Base::from_inverted(inverted))
}

pub fn compute_u_over(x: &RatFunc, base: Base) -> Result<RatFunc, CertError> {
    let b = base.value(x.field());
    let x2 = x.square();
    let den = &x2 + &b;
    if den.is_zero() {
        return Err(CertError::DegenerateDenominator("x^2 + b"));
    }
    let num = &(&x2 + &b.square()) + &b;
    Ok(&num / &den)
}

/// `(y^2 + B^2 + B) / (y^2 + B)` with `B = b^(2^s)`.
pub fn compute_v(y: &RatFunc, s: u32, inverted: bool) -> Result<RatFunc, CertError> {
    compute_v_over(y, s, Base::from_inverted(inverted))
}

pub fn compute_v_over(y: &RatFunc, s: u32, base: Base) -> Result<RatFunc, CertError> {
    let big = base.value(y.field()).frobenius_pow(s);
    let y2 = y.square();
    let den = &y2 + &big;
    if den.is_zero() {
        return Err(CertError::DegenerateDenominator("y^2 + b^(2^s)"));
    }
    let num = &(&y2 + &big.square()) + &big;
    Ok(&num / &den)
}

/// The `r` with `b = a^(2^r)`, if any.
///
/// For nonconstant `a` the height multiplies by `2^r`, which pins down the
/// only candidate. For constant `a` the orbit has length dividing `m`.
pub fn is_2power_of(a: &RatFunc, b: &RatFunc) -> Option<u32> {
    if a.is_zero() || b.is_zero() {
        return (a.is_zero() && b.is_zero()).then_some(0);
    }
    if a.is_constant() {
        if !b.is_constant() {
            return None;
        }
        let m = a.field().degree();
        let mut x = a.clone();
        for r in 0..m {
            if x == *b {
                return Some(r);
            }
            x = x.square();
        }
        return None;
    }
    let ha = a.height().ok()?;
    let hb = b.height().ok()?;
    if hb % ha != 0 {
        return None;
    }
    let ratio = hb / ha;
    if !ratio.is_power_of_two() {
        return None;
    }
    let r = ratio.trailing_zeros();
    (a.frobenius_pow(r) == *b).then_some(r)
}

/// A pair `(x, y)` with the exponent that relates them when valid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerPair {
    pub x: RatFunc,
    pub y: RatFunc,
    pub s: u32,
}

impl PowerPair {
    /// `(x, x^(2^s))`.
    pub fn new(x: RatFunc, s: u32) -> Self {
        let y = x.frobenius_pow(s);
        Self { x, y, s }
    }

    pub fn is_valid(&self) -> bool {
        self.x.frobenius_pow(self.s) == self.y
    }
}

/// Exponents found by [`check_power_relation`]: `v = u^(2^r)`, `v~ = u~^(2^j)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PowerRelation {
    pub s: u32,
    pub r: u32,
    pub j: u32,
}

/// Largest `s` tried for the pair: one past `log2(height(y))`, and at least
/// `m - 1` when `x` is constant (Frobenius orbits of constants).
pub fn search_bound(x: &RatFunc, y: &RatFunc, field: FieldSpec) -> u32 {
    let hy = if y.is_zero() { 0 } else { y.height().unwrap_or(0) };
    let log = 64 - hy.max(1).leading_zeros() - 1;
    let mut bound = log + 1;
    if x.is_constant() || x.is_zero() {
        bound = bound.max(field.degree() - 1);
    }
    bound
}

/// Searches `s` up to [`search_bound`] for which both `v = u^(2^r)` and
/// `v~ = u~^(2^j)` hold, and cross-checks `y = x^(2^s)` on success.
///
/// An `s` for which `v` or `v~` has a vanishing denominator is skipped: that
/// happens only for `y = b^(2^(s-1))`, which is never `x^(2^s)` because
/// `t` is not a square.
pub fn check_power_relation(x: &RatFunc, y: &RatFunc) -> Result<Option<PowerRelation>, CertError> {
    let u = compute_u(x, false)?;
    let u_inv = compute_u(x, true)?;
    for s in 0..=search_bound(x, y, x.field()) {
        let (Ok(v), Ok(v_inv)) = (compute_v(y, s, false), compute_v(y, s, true)) else {
            continue;
        };
        let Some(r) = is_2power_of(&u, &v) else { continue };
        let Some(j) = is_2power_of(&u_inv, &v_inv) else { continue };
        if x.frobenius_pow(s) != *y {
            return Err(CertError::TheoremViolation { s });
        }
        return Ok(Some(PowerRelation { s, r, j }));
    }
    Ok(None)
}

/// Solves `v = u^(2^r)` for `y`:
/// `y = (x^(2^r) t^(2^s) + t^(2^(r-1) + 2^s) + t^(2^r + 2^(s-1))) t^(-2^r)`.
/// Requires `r, s >= 1`.
pub fn y_from_first_relation(x: &RatFunc, s: u32, r: u32) -> RatFunc {
    assert!(r >= 1 && s >= 1);
    let f = x.field();
    let p = |k: u32| 1i64 << k;
    let tp = |e: i64| RatFunc::t_pow(f, e);
    let inner = &(&(&x.frobenius_pow(r) * &tp(p(s))) + &tp(p(r - 1) + p(s))) + &tp(p(r) + p(s - 1));
    &inner * &tp(-p(r))
}

/// Solves `v~ = u~^(2^j)` for `y`:
/// `y = (x^(2^j) t^(-2^s) + t^(-2^s - 2^(j-1)) + t^(-2^j - 2^(s-1))) t^(2^j)`.
/// Requires `j, s >= 1`.
pub fn y_from_second_relation(x: &RatFunc, s: u32, j: u32) -> RatFunc {
    assert!(j >= 1 && s >= 1);
    let f = x.field();
    let p = |k: u32| 1i64 << k;
    let tp = |e: i64| RatFunc::t_pow(f, e);
    let inner =
        &(&(&x.frobenius_pow(j) * &tp(-p(s))) + &tp(-p(s) - p(j - 1))) + &tp(-p(j) - p(s - 1));
    &inner * &tp(p(j))
}

/// Both sides of the identity obtained by eliminating `y` between
/// [`y_from_first_relation`] and [`y_from_second_relation`]:
/// `t^(2^s-2^r) x^(2^r) + t^(2^j-2^s) x^(2^j)` and
/// `t^(2^s-2^(r-1)) + t^(2^(s-1)) + t^(2^(j-1)-2^s) + t^(-2^(s-1))`.
pub fn eliminated_identity(x: &RatFunc, s: u32, r: u32, j: u32) -> (RatFunc, RatFunc) {
    assert!(r >= 1 && s >= 1 && j >= 1);
    let f = x.field();
    let p = |k: u32| 1i64 << k;
    let tp = |e: i64| RatFunc::t_pow(f, e);
    let lhs = &(&tp(p(s) - p(r)) * &x.frobenius_pow(r)) + &(&tp(p(j) - p(s)) * &x.frobenius_pow(j));
    let terms: Vec<RatFunc> =
        [p(s) - p(r - 1), p(s - 1), p(j - 1) - p(s), -p(s - 1)].into_iter().map(tp).collect();
    let rhs = terms.iter().fold(RatFunc::zero(f), |acc, t| &acc + t);
    (lhs, rhs)
}
