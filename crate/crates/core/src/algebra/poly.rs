//! Dense univariate polynomials in `t` over GF(2^m).

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, AddAssign, Mul};

use super::field::{FieldElem, FieldSpec};
use super::AlgebraError;

/// A polynomial with coefficients stored lowest degree first and no trailing
/// zeros, so the zero polynomial has an empty coefficient vector.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    field: FieldSpec,
    coeffs: Vec<u32>,
}

impl Poly {
    pub fn zero(field: FieldSpec) -> Self {
        Self { field, coeffs: Vec::new() }
    }

    pub fn one(field: FieldSpec) -> Self {
        Self { field, coeffs: vec![1] }
    }

    /// The indeterminate `t`.
    pub fn t(field: FieldSpec) -> Self {
        Self { field, coeffs: vec![0, 1] }
    }

    pub fn constant(c: FieldElem) -> Self {
        Self::from_raw(c.spec(), vec![c.bits()])
    }

    /// `c * t^k`.
    pub fn monomial(c: FieldElem, k: usize) -> Self {
        let mut coeffs = vec![0; k + 1];
        coeffs[k] = c.bits();
        Self::from_raw(c.spec(), coeffs)
    }

    /// Builds a polynomial from coefficients, lowest degree first.
    pub fn from_coeffs(field: FieldSpec, coeffs: &[FieldElem]) -> Result<Self, AlgebraError> {
        if coeffs.iter().any(|c| c.spec() != field) {
            return Err(AlgebraError::FieldMismatch);
        }
        Ok(Self::from_raw(field, coeffs.iter().map(|c| c.bits()).collect()))
    }

    /// Builds a polynomial from raw coefficient bit patterns, lowest degree first.
    pub fn from_bits(field: FieldSpec, coeffs: &[u64]) -> Result<Self, AlgebraError> {
        let coeffs = coeffs
            .iter()
            .map(|&b| field.elem(b).map(|e| e.bits()))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self::from_raw(field, coeffs))
    }

    pub(crate) fn from_raw(field: FieldSpec, mut coeffs: Vec<u32>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Self { field, coeffs }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub(crate) fn raw(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0; only for callers that
    /// already excluded zero or do not care.
    pub(crate) fn deg0(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn coeff(&self, i: usize) -> FieldElem {
        FieldElem::from_raw(self.field, self.coeffs.get(i).copied().unwrap_or(0))
    }

    pub fn coeffs(&self) -> impl DoubleEndedIterator<Item = FieldElem> + ExactSizeIterator + '_ {
        self.coeffs.iter().map(|&b| FieldElem::from_raw(self.field, b))
    }

    pub fn leading(&self) -> FieldElem {
        FieldElem::from_raw(self.field, self.coeffs.last().copied().unwrap_or(0))
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&1)
    }

    fn same_field(&self, other: &Poly) {
        assert_eq!(self.field, other.field, "polynomials over different fields");
    }

    /// Multiplies by a constant.
    pub fn scale(&self, c: FieldElem) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.field);
        }
        let f = self.field;
        let k = c.bits();
        Poly { field: f, coeffs: self.coeffs.iter().map(|&a| f.mul_bits(a, k)).collect() }
    }

    /// Scales to leading coefficient one; zero stays zero.
    pub fn monic(&self) -> Poly {
        if self.is_zero() || self.is_monic() {
            return self.clone();
        }
        let inv = self.leading().inv().expect("nonzero leading coefficient");
        self.scale(inv)
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![0; k];
        coeffs.extend_from_slice(&self.coeffs);
        Poly { field: self.field, coeffs }
    }

    pub fn square(&self) -> Poly {
        let f = self.field;
        let mut coeffs = vec![0; (2 * self.coeffs.len()).saturating_sub(1)];
        for (i, &a) in self.coeffs.iter().enumerate() {
            coeffs[2 * i] = f.square_bits(a);
        }
        Poly { field: f, coeffs }
    }

    /// `self^(2^k)`: each coefficient raised to `2^k`, exponents scaled by `2^k`.
    pub fn frobenius_pow(&self, k: u32) -> Poly {
        if k == 0 || self.is_zero() {
            return self.clone();
        }
        let f = self.field;
        let stride = 1usize << k;
        let mut coeffs = vec![0; (self.coeffs.len() - 1) * stride + 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            coeffs[i * stride] = FieldElem::from_raw(f, a).frobenius_pow(k as u64).bits();
        }
        Poly { field: f, coeffs }
    }

    pub fn pow(&self, mut k: u64) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(self.field);
        while k != 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k != 0 {
                base = base.square();
            }
        }
        acc
    }

    /// The square root when every odd-degree coefficient vanishes.
    pub fn sqrt(&self) -> Option<Poly> {
        if self.coeffs.iter().skip(1).step_by(2).any(|&a| a != 0) {
            return None;
        }
        let f = self.field;
        let coeffs = self.coeffs.iter().step_by(2).map(|&a| f.sqrt_bits(a)).collect();
        Some(Poly { field: f, coeffs })
    }

    pub fn is_square(&self) -> bool {
        self.coeffs.iter().skip(1).step_by(2).all(|&a| a == 0)
    }

    /// Formal derivative; only odd-degree terms survive in characteristic 2.
    pub fn derivative(&self) -> Poly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &a)| if i % 2 == 1 { a } else { 0 })
            .collect();
        Poly::from_raw(self.field, coeffs)
    }

    pub fn eval(&self, x: FieldElem) -> FieldElem {
        let f = self.field;
        let acc = self.coeffs.iter().rev().fold(0u32, |acc, &a| f.mul_bits(acc, x.bits()) ^ a);
        FieldElem::from_raw(f, acc)
    }

    /// Euclidean division.
    pub fn div_rem(&self, divisor: &Poly) -> Result<(Poly, Poly), AlgebraError> {
        self.same_field(divisor);
        let Some(dd) = divisor.degree() else {
            return Err(AlgebraError::DivisionByZero);
        };
        let f = self.field;
        if self.coeffs.len() <= dd {
            return Ok((Poly::zero(f), self.clone()));
        }
        let lead_inv = f.inv_bits(*divisor.coeffs.last().unwrap()).unwrap();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0u32; rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = rem[i];
            if c == 0 {
                continue;
            }
            let q = if lead_inv == 1 { c } else { f.mul_bits(c, lead_inv) };
            quot[i - dd] = q;
            for (j, &d) in divisor.coeffs.iter().enumerate() {
                if d != 0 {
                    rem[i - dd + j] ^= f.mul_bits(q, d);
                }
            }
        }
        rem.truncate(dd);
        Ok((Poly::from_raw(f, quot), Poly::from_raw(f, rem)))
    }

    pub fn rem(&self, divisor: &Poly) -> Result<Poly, AlgebraError> {
        self.div_rem(divisor).map(|(_, r)| r)
    }

    /// Quotient of an exact division; `None` if the remainder is nonzero.
    pub fn div_exact(&self, divisor: &Poly) -> Option<Poly> {
        let (q, r) = self.div_rem(divisor).ok()?;
        r.is_zero().then_some(q)
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Poly) -> Poly {
        self.same_field(other);
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `(self * other) mod modulus`.
    pub fn mul_mod(&self, other: &Poly, modulus: &Poly) -> Poly {
        (self * other).rem(modulus).expect("nonzero modulus")
    }

    /// `self^(2^k) mod modulus` by repeated squaring.
    pub fn frobenius_mod(&self, k: u64, modulus: &Poly) -> Poly {
        let mut x = self.rem(modulus).expect("nonzero modulus");
        for _ in 0..k {
            x = x.square().rem(modulus).expect("nonzero modulus");
        }
        x
    }

    /// Multiplicity of `factor` (nonconstant) in `self` (nonzero).
    pub fn multiplicity(&self, factor: &Poly) -> u32 {
        debug_assert!(!factor.is_constant());
        let mut n = 0;
        let mut p = self.clone();
        while let Some(q) = p.div_exact(factor) {
            n += 1;
            p = q;
        }
        n
    }

    /// Deterministic order: by degree, then coefficients from the top down.
    pub fn cmp_graded(&self, other: &Poly) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic on the coefficient vector, lowest degree first.
impl Ord for Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.field.cmp(&other.field).then_with(|| self.coeffs.cmp(&other.coeffs))
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.same_field(rhs);
        let (long, short) =
            if self.coeffs.len() >= rhs.coeffs.len() { (self, rhs) } else { (rhs, self) };
        let mut coeffs = long.coeffs.clone();
        for (a, &b) in coeffs.iter_mut().zip(&short.coeffs) {
            *a ^= b;
        }
        Poly::from_raw(self.field, coeffs)
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        self.same_field(rhs);
        if self.coeffs.len() < rhs.coeffs.len() {
            self.coeffs.resize(rhs.coeffs.len(), 0);
        }
        for (a, &b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a ^= b;
        }
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.same_field(rhs);
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(self.field);
        }
        let f = self.field;
        let mut coeffs = vec![0u32; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                if b != 0 {
                    coeffs[i + j] ^= f.mul_bits(a, b);
                }
            }
        }
        Poly::from_raw(f, coeffs)
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::expr::poly_to_string(self))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::expr::poly_to_string(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf2(bits: &[u64]) -> Poly {
        Poly::from_bits(FieldSpec::gf2(), bits).unwrap()
    }

    #[test]
    fn char2_identities() {
        let p = gf2(&[1, 1]); // t + 1
        assert_eq!(p.square(), gf2(&[1, 0, 1]));
        assert_eq!(&p * &p, p.square());
        assert!((&p + &p).is_zero());
        assert_eq!(p.frobenius_pow(2), gf2(&[1, 0, 0, 0, 1]));
        assert_eq!(p.pow(4), p.frobenius_pow(2));
    }

    #[test]
    fn division_round_trip() {
        let f = FieldSpec::gf256();
        let a = Poly::from_bits(f, &[0x13, 0, 0xfe, 0x07, 0x91, 0x02]).unwrap();
        let b = Poly::from_bits(f, &[0x55, 0x01, 0x3c]).unwrap();
        let (q, r) = a.div_rem(&b).unwrap();
        assert!(r.degree() < b.degree());
        assert_eq!(&(&q * &b) + &r, a);
        assert_eq!(a.div_rem(&Poly::zero(f)), Err(AlgebraError::DivisionByZero));
    }

    #[test]
    fn gcd_is_monic_common_factor() {
        let f = FieldSpec::gf256();
        let c = Poly::from_bits(f, &[0x21, 0x01]).unwrap();
        let a = &c * &Poly::from_bits(f, &[0x05, 0x09, 0x11]).unwrap();
        let b = &c * &Poly::from_bits(f, &[0x77, 0x03]).unwrap();
        assert_eq!(a.gcd(&b), c);
    }

    #[test]
    fn derivative_and_sqrt() {
        let p = gf2(&[1, 1, 1, 1]); // t^3 + t^2 + t + 1
        assert_eq!(p.derivative(), gf2(&[1, 0, 1]));
        assert!(p.square().derivative().is_zero());
        assert_eq!(p.square().sqrt(), Some(p.clone()));
        assert_eq!(p.sqrt(), None);
    }

    #[test]
    fn multiplicity_counts_repeated_factor() {
        let f = FieldSpec::gf2();
        let t1 = gf2(&[1, 1]);
        let p = &t1.pow(5) * &Poly::t(f);
        assert_eq!(p.multiplicity(&t1), 5);
        assert_eq!(p.multiplicity(&Poly::t(f)), 1);
    }
}
