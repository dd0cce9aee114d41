//! The constant field GF(2^m) in the power basis of a fixed irreducible
//! modulus.

use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub};

use super::gf2;
use super::AlgebraError;

/// GF(2^m) described by its defining modulus.
///
/// `modulus` packs a monic irreducible polynomial of degree `m` over GF(2),
/// bit `i` being the coefficient of `X^i`. Degrees up to 32 are supported.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldSpec {
    m: u32,
    modulus: u64,
}

impl FieldSpec {
    pub const MAX_DEGREE: u32 = 32;

    /// Validates the modulus: degree `m` and irreducible over GF(2).
    pub fn new(m: u32, modulus: u64) -> Result<Self, AlgebraError> {
        if m == 0 || m > Self::MAX_DEGREE {
            return Err(AlgebraError::UnsupportedDegree(m));
        }
        if gf2::degree(modulus) != Some(m) {
            return Err(AlgebraError::ModulusDegree { m, modulus });
        }
        if !gf2::is_irreducible(modulus) {
            return Err(AlgebraError::ReducibleModulus(modulus));
        }
        Ok(Self { m, modulus })
    }

    /// GF(2^m) with the lexicographically smallest irreducible modulus.
    pub fn with_degree(m: u32) -> Result<Self, AlgebraError> {
        if m == 0 || m > Self::MAX_DEGREE {
            return Err(AlgebraError::UnsupportedDegree(m));
        }
        let top = 1u64 << m;
        (0..top)
            .map(|low| top | low)
            .find(|&f| gf2::is_irreducible(f))
            .map(|modulus| Self { m, modulus })
            .ok_or(AlgebraError::UnsupportedDegree(m))
    }

    /// GF(2^8) with modulus X^8 + X^4 + X^3 + X + 1.
    pub fn gf256() -> Self {
        Self { m: 8, modulus: 0x11b }
    }

    pub fn gf2() -> Self {
        Self { m: 1, modulus: 0b11 }
    }

    pub fn degree(&self) -> u32 {
        self.m
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Number of elements, 2^m.
    pub fn order(&self) -> u64 {
        1u64 << self.m
    }

    /// Bit mask covering a reduced element.
    #[inline]
    pub(crate) fn mask(&self) -> u32 {
        if self.m == 32 {
            u32::MAX
        } else {
            (1u32 << self.m) - 1
        }
    }

    pub fn elem(&self, bits: u64) -> Result<FieldElem, AlgebraError> {
        if bits >> self.m != 0 {
            return Err(AlgebraError::ElementOutOfRange { bits, m: self.m });
        }
        Ok(FieldElem { spec: *self, bits: bits as u32 })
    }

    pub fn zero(&self) -> FieldElem {
        FieldElem { spec: *self, bits: 0 }
    }

    pub fn one(&self) -> FieldElem {
        FieldElem { spec: *self, bits: 1 }
    }

    /// Every element in increasing bit order. Only sensible for small `m`.
    pub fn elements(&self) -> impl Iterator<Item = FieldElem> + '_ {
        let spec = *self;
        (0..self.order()).map(move |b| FieldElem { spec, bits: b as u32 })
    }

    // Raw arithmetic on reduced bit patterns. Callers guarantee reduction.

    #[inline]
    pub(crate) fn mul_bits(&self, a: u32, b: u32) -> u32 {
        gf2::reduce(gf2::clmul(a, b), self.modulus, self.m) as u32
    }

    #[inline]
    pub(crate) fn square_bits(&self, a: u32) -> u32 {
        self.mul_bits(a, a)
    }

    pub(crate) fn pow_bits(&self, a: u32, mut k: u64) -> u32 {
        let mut base = a;
        let mut acc = 1u32;
        while k != 0 {
            if k & 1 == 1 {
                acc = self.mul_bits(acc, base);
            }
            base = self.square_bits(base);
            k >>= 1;
        }
        acc
    }

    /// Inverse by the extended Euclidean algorithm on packed polynomials.
    pub(crate) fn inv_bits(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        let (mut r0, mut r1) = (self.modulus, a as u64);
        let (mut s0, mut s1) = (0u64, 1u64);
        while r1 != 0 {
            let d1 = 63 - r1.leading_zeros();
            let mut q = 0u64;
            while r0 != 0 && 63 - r0.leading_zeros() >= d1 {
                let shift = 63 - r0.leading_zeros() - d1;
                q |= 1 << shift;
                r0 ^= r1 << shift;
            }
            // s0 - q * s1; q and s1 have degree below m so the product fits
            let mut qs = 0u64;
            let mut qq = q;
            while qq != 0 {
                qs ^= s1 << qq.trailing_zeros();
                qq &= qq - 1;
            }
            let s2 = s0 ^ qs;
            s0 = s1;
            s1 = s2;
            core::mem::swap(&mut r0, &mut r1);
        }
        debug_assert_eq!(r0, 1);
        Some(gf2::reduce(s0, self.modulus, self.m) as u32)
    }

    /// Square root: the inverse Frobenius, a^(2^(m-1)).
    #[inline]
    pub(crate) fn sqrt_bits(&self, a: u32) -> u32 {
        let mut r = a;
        for _ in 1..self.m {
            r = self.square_bits(r);
        }
        r
    }

    /// Absolute trace to GF(2).
    pub(crate) fn trace_bits(&self, a: u32) -> u32 {
        let mut acc = 0;
        let mut x = a;
        for _ in 0..self.m {
            acc ^= x;
            x = self.square_bits(x);
        }
        debug_assert!(acc <= 1);
        acc
    }

    /// Frobenius orbits, each listed from its smallest member, ordered by
    /// that representative. Only sensible for small `m`.
    pub fn frobenius_orbits(&self) -> Vec<Vec<FieldElem>> {
        let mut seen = alloc::vec![false; self.order() as usize];
        let mut orbits = Vec::new();
        for e in self.elements() {
            if seen[e.bits as usize] {
                continue;
            }
            let orbit = e.frobenius_orbit();
            for x in &orbit {
                seen[x.bits as usize] = true;
            }
            orbits.push(orbit);
        }
        orbits
    }
}

impl Default for FieldSpec {
    fn default() -> Self {
        Self::gf256()
    }
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF(2^{}; #x{:x})", self.m, self.modulus)
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// An element of GF(2^m), tagged with the field it lives in.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldElem {
    spec: FieldSpec,
    bits: u32,
}

/// The operations accepted by [`field_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Mul,
    Div,
    Inv,
    Sqrt,
    Pow(u64),
}

/// Uniform entry point over the field operations; unary operations ignore `b`.
pub fn field_arith(a: FieldElem, b: FieldElem, op: FieldOp) -> Result<FieldElem, AlgebraError> {
    match op {
        FieldOp::Add => a.try_add(b),
        FieldOp::Mul => a.try_mul(b),
        FieldOp::Div => a.try_div(b),
        FieldOp::Inv => a.inv(),
        FieldOp::Sqrt => Ok(a.sqrt()),
        FieldOp::Pow(k) => Ok(a.pow(k)),
    }
}

impl FieldElem {
    pub(crate) fn from_raw(spec: FieldSpec, bits: u32) -> Self {
        debug_assert_eq!(bits & !spec.mask(), 0);
        Self { spec, bits }
    }

    pub fn spec(&self) -> FieldSpec {
        self.spec
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    pub fn is_one(&self) -> bool {
        self.bits == 1
    }

    fn check(&self, other: &FieldElem) -> Result<(), AlgebraError> {
        if self.spec == other.spec {
            Ok(())
        } else {
            Err(AlgebraError::FieldMismatch)
        }
    }

    pub fn try_add(self, other: FieldElem) -> Result<FieldElem, AlgebraError> {
        self.check(&other)?;
        Ok(Self::from_raw(self.spec, self.bits ^ other.bits))
    }

    pub fn try_mul(self, other: FieldElem) -> Result<FieldElem, AlgebraError> {
        self.check(&other)?;
        Ok(Self::from_raw(self.spec, self.spec.mul_bits(self.bits, other.bits)))
    }

    pub fn try_div(self, other: FieldElem) -> Result<FieldElem, AlgebraError> {
        self.check(&other)?;
        let inv = other.inv()?;
        Ok(Self::from_raw(self.spec, self.spec.mul_bits(self.bits, inv.bits)))
    }

    pub fn inv(self) -> Result<FieldElem, AlgebraError> {
        self.spec
            .inv_bits(self.bits)
            .map(|b| Self::from_raw(self.spec, b))
            .ok_or(AlgebraError::DivisionByZero)
    }

    pub fn square(self) -> FieldElem {
        Self::from_raw(self.spec, self.spec.square_bits(self.bits))
    }

    /// The unique square root; GF(2^m) is perfect.
    pub fn sqrt(self) -> FieldElem {
        Self::from_raw(self.spec, self.spec.sqrt_bits(self.bits))
    }

    /// Square-and-multiply exponentiation; `pow(0)` is one, including for zero.
    pub fn pow(self, k: u64) -> FieldElem {
        Self::from_raw(self.spec, self.spec.pow_bits(self.bits, k))
    }

    /// a^(2^k), reducing `k` modulo the degree first.
    pub fn frobenius_pow(self, k: u64) -> FieldElem {
        let mut bits = self.bits;
        for _ in 0..k % self.spec.m as u64 {
            bits = self.spec.square_bits(bits);
        }
        Self::from_raw(self.spec, bits)
    }

    /// Absolute trace Tr(a) = a + a^2 + ... + a^(2^(m-1)), as 0 or 1.
    pub fn trace(self) -> u32 {
        self.spec.trace_bits(self.bits)
    }

    /// `[a, a^2, a^4, ...]` up to the first repetition.
    pub fn frobenius_orbit(self) -> Vec<FieldElem> {
        let mut orbit = alloc::vec![self];
        let mut x = self.square();
        while x != self {
            orbit.push(x);
            x = x.square();
        }
        orbit
    }

    /// Whether `other` is `self^(2^j)` for some `j`.
    pub fn same_orbit(self, other: FieldElem) -> bool {
        if self.spec != other.spec {
            return false;
        }
        let mut x = self;
        for _ in 0..self.spec.m {
            if x == other {
                return true;
            }
            x = x.square();
        }
        false
    }
}

/// Both roots of `z^2 + z = a` in GF(2^m), smaller first, or `None` when
/// `Tr(a) = 1`.
pub fn solve_const_as(a: FieldElem) -> Option<(FieldElem, FieldElem)> {
    if a.trace() != 0 {
        return None;
    }
    let spec = a.spec();
    let m = spec.degree();
    let z = if m % 2 == 1 {
        // half trace: sum of a^(4^i) for i <= (m-1)/2
        let mut acc = 0u32;
        let mut x = a.bits();
        for _ in 0..=(m - 1) / 2 {
            acc ^= x;
            x = spec.square_bits(spec.square_bits(x));
        }
        acc
    } else {
        let columns: Vec<gf2::BitVec> = (0..m)
            .map(|j| {
                let b = 1u32 << j;
                let img = spec.square_bits(b) ^ b;
                bits_to_vec(img, m)
            })
            .collect();
        let x = gf2::solve(&columns, &bits_to_vec(a.bits(), m))?;
        (0..m as usize).filter(|&j| x.get(j)).fold(0u32, |acc, j| acc | 1 << j)
    };
    let z = FieldElem::from_raw(spec, z);
    debug_assert_eq!(z.square() + z, a);
    let z1 = z + spec.one();
    Some(if z <= z1 { (z, z1) } else { (z1, z) })
}

fn bits_to_vec(bits: u32, m: u32) -> gf2::BitVec {
    let mut v = gf2::BitVec::zeros(m as usize);
    for j in 0..m as usize {
        if (bits >> j) & 1 == 1 {
            v.set(j, true);
        }
    }
    v
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#x{:x}", self.bits)
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#x{:x}", self.bits)
    }
}

impl Add for FieldElem {
    type Output = FieldElem;
    fn add(self, rhs: FieldElem) -> FieldElem {
        self.try_add(rhs).expect("field mismatch")
    }
}

impl Sub for FieldElem {
    type Output = FieldElem;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn sub(self, rhs: FieldElem) -> FieldElem {
        self + rhs
    }
}

impl Neg for FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        self
    }
}

impl AddAssign for FieldElem {
    fn add_assign(&mut self, rhs: FieldElem) {
        *self = *self + rhs;
    }
}

impl Mul for FieldElem {
    type Output = FieldElem;
    fn mul(self, rhs: FieldElem) -> FieldElem {
        self.try_mul(rhs).expect("field mismatch")
    }
}

impl MulAssign for FieldElem {
    fn mul_assign(&mut self, rhs: FieldElem) {
        *self = *self * rhs;
    }
}

impl Div for FieldElem {
    type Output = FieldElem;
    fn div(self, rhs: FieldElem) -> FieldElem {
        self.try_div(rhs).expect("division by zero")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Bit-by-bit shift-and-add multiply with interleaved reduction,
    /// independent of `clmul` + `reduce`.
    fn oracle_mul(a: u32, b: u32, modulus: u64, m: u32) -> u32 {
        let mut a = a as u64;
        let mut r = 0u64;
        for i in 0..m {
            if (b >> i) & 1 == 1 {
                r ^= a;
            }
            a <<= 1;
            if (a >> m) & 1 == 1 {
                a ^= modulus;
            }
        }
        r as u32
    }

    #[test]
    fn aes_product() {
        let f = FieldSpec::gf256();
        assert_eq!(oracle_mul(0x53, 0xca, 0x11b, 8), 0x01);
        let a = f.elem(0x53).unwrap();
        let b = f.elem(0xca).unwrap();
        assert_eq!((a * b).bits(), 0x01);
    }

    #[test]
    fn mul_matches_oracle_exhaustively_gf256() {
        let f = FieldSpec::gf256();
        for a in 0..256u32 {
            for b in 0..256u32 {
                assert_eq!(f.mul_bits(a, b), oracle_mul(a, b, 0x11b, 8));
            }
        }
    }

    #[test]
    fn inverse_sqrt_and_char2() {
        let f = FieldSpec::gf256();
        for a in f.elements() {
            assert!((a + a).is_zero());
            assert_eq!(a.square().sqrt(), a);
            if !a.is_zero() {
                assert!((a * a.inv().unwrap()).is_one());
            }
        }
        assert_eq!(f.zero().inv(), Err(AlgebraError::DivisionByZero));
    }

    #[test]
    fn mismatched_fields_rejected() {
        let a = FieldSpec::gf256().one();
        let b = FieldSpec::with_degree(4).unwrap().one();
        assert_eq!(a.try_add(b), Err(AlgebraError::FieldMismatch));
        assert_eq!(field_arith(a, b, FieldOp::Mul), Err(AlgebraError::FieldMismatch));
    }

    #[test]
    fn modulus_validation() {
        assert!(FieldSpec::new(8, 0x11b).is_ok());
        assert_eq!(FieldSpec::new(8, 0x101), Err(AlgebraError::ReducibleModulus(0x101)));
        assert!(matches!(FieldSpec::new(8, 0x1b), Err(AlgebraError::ModulusDegree { .. })));
        assert_eq!(FieldSpec::with_degree(2).unwrap().modulus(), 0b111);
        assert_eq!(FieldSpec::with_degree(4).unwrap().modulus(), 0b10011);
    }

    #[test]
    fn pow_is_repeated_multiplication() {
        let f = FieldSpec::gf256();
        let a = f.elem(0x57).unwrap();
        let mut acc = f.one();
        for k in 0..20 {
            assert_eq!(a.pow(k), acc);
            acc *= a;
        }
        assert!(a.pow(255).is_one());
    }

    #[test]
    fn const_as_against_exhaustive_search() {
        for f in [FieldSpec::gf2(), FieldSpec::with_degree(3).unwrap(), FieldSpec::gf256()] {
            for a in f.elements() {
                let roots: Vec<FieldElem> = f.elements().filter(|&z| z.square() + z == a).collect();
                match solve_const_as(a) {
                    Some((z0, z1)) => assert_eq!(roots, alloc::vec![z0, z1]),
                    None => assert!(roots.is_empty()),
                }
            }
        }
        let f = FieldSpec::gf2();
        assert_eq!(solve_const_as(f.zero()), Some((f.zero(), f.one())));
        assert_eq!(solve_const_as(f.one()), None);
    }

    #[test]
    fn orbits_partition_the_field() {
        let f = FieldSpec::gf256();
        let orbits = f.frobenius_orbits();
        assert_eq!(orbits.iter().map(Vec::len).sum::<usize>(), 256);
        // necklaces of length 8 over GF(2)
        assert_eq!(orbits.len(), 36);
        assert_eq!(orbits[0], alloc::vec![f.zero()]);
        assert_eq!(orbits[1], alloc::vec![f.one()]);
    }
}
