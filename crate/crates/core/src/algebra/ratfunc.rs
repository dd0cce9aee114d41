//! Elements of K = GF(2^m)(t) kept in canonical reduced form.

use core::fmt;
use core::ops::{Add, AddAssign, Div, Mul, Sub};

use super::field::{FieldElem, FieldSpec};
use super::poly::Poly;
use super::AlgebraError;

/// A rational function `num / den`.
///
/// Invariants: `den` is monic and nonzero, `gcd(num, den) = 1`, and zero is
/// `0 / 1`. Equality is therefore structural.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    /// Reduces `num / den` to canonical form.
    pub fn new(num: Poly, den: Poly) -> Result<Self, AlgebraError> {
        if num.field() != den.field() {
            return Err(AlgebraError::FieldMismatch);
        }
        if den.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return Self::zero(den.field());
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g).unwrap(), den.div_exact(&g).unwrap())
        };
        Self::with_monic_den(num, den)
    }

    fn with_monic_den(num: Poly, den: Poly) -> Self {
        if den.is_monic() {
            return Self { num, den };
        }
        let inv = den.leading().inv().expect("nonzero denominator");
        Self { num: num.scale(inv), den: den.scale(inv) }
    }

    pub fn zero(field: FieldSpec) -> Self {
        Self { num: Poly::zero(field), den: Poly::one(field) }
    }

    pub fn one(field: FieldSpec) -> Self {
        Self { num: Poly::one(field), den: Poly::one(field) }
    }

    pub fn t(field: FieldSpec) -> Self {
        Self::from_poly(Poly::t(field))
    }

    pub fn constant(c: FieldElem) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn from_poly(p: Poly) -> Self {
        let field = p.field();
        Self { num: p, den: Poly::one(field) }
    }

    /// `t^k` for any integer `k`.
    pub fn t_pow(field: FieldSpec, k: i64) -> Self {
        let mono = Poly::monomial(field.one(), k.unsigned_abs() as usize);
        if k >= 0 {
            Self::from_poly(mono)
        } else {
            Self { num: Poly::one(field), den: mono }
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.num.field()
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// Whether the element lies in the constant field.
    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_one()
    }

    /// The constant value, if any.
    pub fn as_constant(&self) -> Option<FieldElem> {
        self.is_constant().then(|| self.num.coeff(0))
    }

    /// `max(deg num, deg den)`: the degree of the zero (equivalently pole)
    /// divisor.
    pub fn height(&self) -> Result<u64, AlgebraError> {
        if self.is_zero() {
            return Err(AlgebraError::ZeroElement);
        }
        Ok(self.num.deg0().max(self.den.deg0()) as u64)
    }

    pub fn inv(&self) -> Result<RatFunc, AlgebraError> {
        if self.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(Self::with_monic_den(self.den.clone(), self.num.clone()))
    }

    pub fn try_div(&self, rhs: &RatFunc) -> Result<RatFunc, AlgebraError> {
        Ok(self * &rhs.inv()?)
    }

    pub fn square(&self) -> RatFunc {
        Self { num: self.num.square(), den: self.den.square() }
    }

    /// `self^(2^k)`; Frobenius keeps the fraction reduced.
    pub fn frobenius_pow(&self, k: u32) -> RatFunc {
        Self { num: self.num.frobenius_pow(k), den: self.den.frobenius_pow(k) }
    }

    pub fn pow(&self, k: u64) -> RatFunc {
        Self { num: self.num.pow(k), den: self.den.pow(k) }
    }

    /// Integer power; negative exponents invert first.
    pub fn powi(&self, k: i64) -> Result<RatFunc, AlgebraError> {
        if k >= 0 {
            Ok(self.pow(k as u64))
        } else {
            Ok(self.inv()?.pow(k.unsigned_abs()))
        }
    }

    /// Formal derivative with respect to `t` (quotient rule).
    pub fn derivative(&self) -> RatFunc {
        let num = &(&self.num.derivative() * &self.den) + &(&self.num * &self.den.derivative());
        Self::reduce(num, self.den.square())
    }

    /// The square root in K, when `self` is a square.
    pub fn sqrt(&self) -> Option<RatFunc> {
        Some(Self { num: self.num.sqrt()?, den: self.den.sqrt()? })
    }

    /// Substitutes `t -> 1/t`.
    pub fn invert_variable(&self) -> RatFunc {
        // p(1/t) = rev(p) / t^deg p
        let f = self.field();
        if self.is_zero() {
            return self.clone();
        }
        let dn = self.num.deg0();
        let dd = self.den.deg0();
        let rev = |p: &Poly| {
            let mut c: alloc::vec::Vec<u32> = p.raw().to_vec();
            c.reverse();
            Poly::from_raw(f, c)
        };
        let (num, den) = if dd >= dn {
            (rev(&self.num).shift(dd - dn), rev(&self.den))
        } else {
            (rev(&self.num), rev(&self.den).shift(dn - dd))
        };
        Self::reduce(num, den)
    }
}

impl Add<&RatFunc> for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RatFunc::reduce(&self.num + &rhs.num, self.den.clone());
        }
        let g = self.den.gcd(&rhs.den);
        if g.is_one() {
            let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
            let den = &self.den * &rhs.den;
            return RatFunc { num, den };
        }
        let b = self.den.div_exact(&g).unwrap();
        let d = rhs.den.div_exact(&g).unwrap();
        let num = &(&self.num * &d) + &(&rhs.num * &b);
        let den = &self.den * &d;
        if num.is_zero() {
            return RatFunc::zero(self.field());
        }
        let h = num.gcd(&g);
        if h.is_one() {
            RatFunc { num, den }
        } else {
            RatFunc { num: num.div_exact(&h).unwrap(), den: den.div_exact(&h).unwrap() }
        }
    }
}

impl Add for RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: RatFunc) -> RatFunc {
        &self + &rhs
    }
}

impl AddAssign<&RatFunc> for RatFunc {
    fn add_assign(&mut self, rhs: &RatFunc) {
        *self = &*self + rhs;
    }
}

impl Sub<&RatFunc> for &RatFunc {
    type Output = RatFunc;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + rhs
    }
}

impl Mul<&RatFunc> for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero(self.field());
        }
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let div = |p: &Poly, g: &Poly| if g.is_one() { p.clone() } else { p.div_exact(g).unwrap() };
        let num = &div(&self.num, &g1) * &div(&rhs.num, &g2);
        let den = &div(&self.den, &g2) * &div(&rhs.den, &g1);
        RatFunc { num, den }
    }
}

impl Mul for RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: RatFunc) -> RatFunc {
        &self * &rhs
    }
}

impl Div<&RatFunc> for &RatFunc {
    type Output = RatFunc;
    fn div(self, rhs: &RatFunc) -> RatFunc {
        self.try_div(rhs).expect("division by zero")
    }
}

impl Div for RatFunc {
    type Output = RatFunc;
    fn div(self, rhs: RatFunc) -> RatFunc {
        &self / &rhs
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::expr::to_string(self))
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::expr::to_string(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f() -> FieldSpec {
        FieldSpec::gf256()
    }

    #[test]
    fn canonical_form() {
        let t = Poly::t(f());
        let c = f().elem(0x53).unwrap();
        // (c t^2 + c t) / (c t) = t + 1
        let num = Poly::from_coeffs(f(), &[f().zero(), c, c]).unwrap();
        let r = RatFunc::new(num, t.scale(c)).unwrap();
        assert_eq!(r, RatFunc::t(f()) + RatFunc::one(f()));
        assert!(RatFunc::new(Poly::one(f()), Poly::zero(f())).is_err());
        let z = RatFunc::new(Poly::zero(f()), t).unwrap();
        assert_eq!(z, RatFunc::zero(f()));
        assert!(z.denom().is_one());
    }

    #[test]
    fn field_axioms_on_samples() {
        let t = RatFunc::t(f());
        let one = RatFunc::one(f());
        let a = &(&t + &one).inv().unwrap() + &t.square();
        let b = &t.pow(3) / &(&t + &RatFunc::constant(f().elem(7).unwrap()));
        assert_eq!(&(&a + &b) - &b, a);
        assert_eq!(&(&a * &b) / &b, a);
        assert_eq!(&a * &(&b + &one), &(&a * &b) + &a);
        assert!((&a + &a).is_zero());
        assert_eq!(a.frobenius_pow(3), a.pow(8));
    }

    #[test]
    fn variable_inversion() {
        let t = RatFunc::t(f());
        let one = RatFunc::one(f());
        let x = &(&t.square() + &one) / &(&t.pow(5) + &t);
        let y = x.invert_variable();
        let ti = t.inv().unwrap();
        let expect = &(&ti.square() + &one) / &(&ti.pow(5) + &ti);
        assert_eq!(y, expect);
        assert_eq!(y.invert_variable(), x);
    }

    #[test]
    fn heights() {
        let t = RatFunc::t(f());
        assert_eq!(t.pow(7).height(), Ok(7));
        assert_eq!(t.inv().unwrap().pow(3).height(), Ok(3));
        assert_eq!(RatFunc::one(f()).height(), Ok(0));
        assert_eq!(RatFunc::zero(f()).height(), Err(AlgebraError::ZeroElement));
    }
}
