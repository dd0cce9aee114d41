//! Solving `z^2 + z = b` and `z^4 + z = b` in K = GF(2^m)(t).
//!
//! If `z` has a pole of order `k` at a place then `z^2 + z` has a pole of
//! order exactly `2k` there, and `z^2 + z` has no other poles. So a solution
//! of `z^2 + z = b` exists only if every pole order of `b` is even, and then
//! `z = g / d` with `d^2 = den(b)` and `deg g <= deg d + e`, where `2e` is the
//! pole order of `b` at infinity. The map `g -> g^2 + g d` is GF(2)-linear in
//! the coordinates of `g`, so the search is one linear system over GF(2).
//!
//! Degree 4 composes two degree-2 steps:
//! `z^4 + z = (z^2 + z)^2 + (z^2 + z)`.

use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::field::solve_const_as;
use crate::algebra::gf2::{self, BitVec};
use crate::algebra::{FieldElem, FieldSpec, Poly, RatFunc};

/// Which additive map `z -> z^q + z` is being inverted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AsDegree {
    Two,
    Four,
}

impl AsDegree {
    pub fn exponent(self) -> u64 {
        match self {
            AsDegree::Two => 2,
            AsDegree::Four => 4,
        }
    }

    pub fn from_exponent(q: u64) -> Option<Self> {
        match q {
            2 => Some(AsDegree::Two),
            4 => Some(AsDegree::Four),
            _ => None,
        }
    }

    /// `z^q + z`.
    pub fn apply(self, z: &RatFunc) -> RatFunc {
        match self {
            AsDegree::Two => &z.square() + z,
            AsDegree::Four => &z.frobenius_pow(2) + z,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AsProblem {
    pub beta: RatFunc,
    pub degree: AsDegree,
}

/// A canonical solution together with the constant kernel of the map; the
/// full solution set is `z + kernel`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AsSolution {
    pub z: RatFunc,
    pub kernel: Vec<FieldElem>,
}

impl AsSolution {
    /// Every solution, in increasing order.
    pub fn solutions(&self) -> Vec<RatFunc> {
        let mut all: Vec<RatFunc> =
            self.kernel.iter().map(|a| &self.z + &RatFunc::constant(*a)).collect();
        all.sort();
        all
    }
}

/// Constants `a` with `a^q = a`: `{0, 1}`, plus the roots of `a^2 + a + 1`
/// for `q = 4` when GF(4) is a subfield.
pub fn kernel(field: FieldSpec, degree: AsDegree) -> Vec<FieldElem> {
    let mut k = vec![field.zero(), field.one()];
    if degree == AsDegree::Four {
        if let Some((a, b)) = solve_const_as(field.one()) {
            k.push(a);
            k.push(b);
        }
    }
    k.sort();
    k
}

/// Necessary condition for solvability: every pole of `beta`, including the
/// one at infinity, has even order.
pub fn pole_parity_screen(beta: &RatFunc) -> bool {
    if !beta.denom().is_square() {
        return false;
    }
    let excess = beta.numer().deg0() as i64 - beta.denom().deg0() as i64;
    excess <= 0 || excess % 2 == 0
}

/// The coset representative with the smallest coefficient vector.
fn canonical(z: RatFunc, kernel: &[FieldElem]) -> RatFunc {
    kernel
        .iter()
        .map(|a| &z + &RatFunc::constant(*a))
        .min()
        .unwrap_or(z)
}

/// Some `z` with `z^2 + z = beta`, chosen without canonicalization.
fn solve_deg2_raw(beta: &RatFunc) -> Option<RatFunc> {
    let field = beta.field();
    if beta.is_zero() {
        return Some(RatFunc::zero(field));
    }
    if !pole_parity_screen(beta) {
        return None;
    }
    let d = beta.denom().sqrt()?;
    let excess = beta.numer().deg0() as i64 - beta.denom().deg0() as i64;
    let e = if excess > 0 { (excess / 2) as usize } else { 0 };
    let n = d.deg0() + e;
    let m = field.degree() as usize;
    let rows = (2 * n + 1) * m;

    let d_raw = d.raw();
    let mut columns = Vec::with_capacity((n + 1) * m);
    for i in 0..=n {
        for j in 0..m {
            let alpha = 1u32 << j;
            let mut col = BitVec::zeros(rows);
            // (alpha t^i)^2
            xor_coeff(&mut col, 2 * i, field.square_bits(alpha), m);
            // alpha t^i * d
            for (k, &dk) in d_raw.iter().enumerate() {
                if dk != 0 {
                    xor_coeff(&mut col, i + k, field.mul_bits(alpha, dk), m);
                }
            }
            columns.push(col);
        }
    }
    let mut rhs = BitVec::zeros(rows);
    for (k, c) in beta.numer().raw().iter().enumerate() {
        xor_coeff(&mut rhs, k, *c, m);
    }
    let x = gf2::solve(&columns, &rhs)?;
    let g: Vec<u32> = (0..=n)
        .map(|i| (0..m).filter(|&j| x.get(i * m + j)).fold(0u32, |acc, j| acc | 1 << j))
        .collect();
    let z = RatFunc::new(Poly::from_raw(field, g), d).expect("nonzero denominator");
    debug_assert_eq!(&z.square() + &z, *beta);
    Some(z)
}

fn xor_coeff(v: &mut BitVec, degree: usize, bits: u32, m: usize) {
    let mut b = bits;
    while b != 0 {
        let j = b.trailing_zeros() as usize;
        v.flip(degree * m + j);
        b &= b - 1;
    }
}

/// Solves `z^2 + z = beta`; `None` when no solution exists in K.
pub fn solve_deg2(beta: &RatFunc) -> Option<AsSolution> {
    let z = solve_deg2_raw(beta)?;
    let kernel = kernel(beta.field(), AsDegree::Two);
    Some(AsSolution { z: canonical(z, &kernel), kernel })
}

/// Solves `z^4 + z = beta` through `w^2 + w = beta`, `z^2 + z = w`.
pub fn solve_deg4(beta: &RatFunc) -> Option<AsSolution> {
    let field = beta.field();
    let kernel = kernel(field, AsDegree::Four);
    let w0 = solve_deg2_raw(beta)?;
    let w1 = &w0 + &RatFunc::one(field);
    let z = [w0, w1].iter().find_map(solve_deg2_raw)?;
    debug_assert_eq!(AsDegree::Four.apply(&z), *beta);
    Some(AsSolution { z: canonical(z, &kernel), kernel })
}

pub fn solve(problem: &AsProblem) -> Option<AsSolution> {
    match problem.degree {
        AsDegree::Two => solve_deg2(&problem.beta),
        AsDegree::Four => solve_deg4(&problem.beta),
    }
}

/// Whether `beta = z^4 + z` for some `z` in K.
pub fn is_as4_image(beta: &RatFunc) -> bool {
    solve_deg4(beta).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;

    fn p(s: &str) -> RatFunc {
        parse(s, FieldSpec::gf256()).unwrap()
    }

    #[test]
    fn screen_examples() {
        assert!(!pole_parity_screen(&p("1/t")));
        assert!(pole_parity_screen(&p("t^4 + t")));
        assert!(pole_parity_screen(&p("1/t^2 + 1/t")));
        assert!(!pole_parity_screen(&p("t^3")));
    }

    #[test]
    fn deg2_examples() {
        let s = solve_deg2(&p("t^4 + t")).unwrap();
        assert_eq!(s.z, p("t^2 + t"));
        assert_eq!(s.solutions(), vec![p("t^2 + t"), p("t^2 + t + 1")]);
        assert!(solve_deg2(&p("1/t")).is_none());
        // even pole order but no solution: z^2 + z = t^2 forces z = t + ..., leaving t
        assert!(solve_deg2(&p("t^2")).is_none());
        // 1/t^2 + 1/t = (1/t)^2 + 1/t
        assert_eq!(solve_deg2(&p("1/t^2 + 1/t")).unwrap().z, p("1/t"));
    }

    #[test]
    fn deg4_examples() {
        assert_eq!(solve_deg4(&p("t^16 + t")).unwrap().z, p("t^4 + t"));
        let zero = solve_deg4(&p("0")).unwrap();
        assert!(zero.z.is_zero());
        // GF(2^8) contains GF(4)
        assert_eq!(zero.kernel.len(), 4);
        assert!(solve_deg4(&p("t")).is_none());
        assert!(!is_as4_image(&p("t")));
        assert!(is_as4_image(&p("t^4 + t")));
    }

    #[test]
    fn kernel_depends_on_parity_of_m() {
        assert_eq!(kernel(FieldSpec::with_degree(3).unwrap(), AsDegree::Four).len(), 2);
        assert_eq!(kernel(FieldSpec::with_degree(2).unwrap(), AsDegree::Four).len(), 4);
        assert_eq!(kernel(FieldSpec::gf256(), AsDegree::Two).len(), 2);
    }

    #[test]
    fn constant_beta_uses_trace() {
        let f = FieldSpec::gf256();
        for a in f.elements() {
            let beta = RatFunc::constant(a);
            let got = solve_deg2(&beta);
            assert_eq!(got.is_some(), a.trace() == 0);
            if let Some(s) = got {
                assert!(s.z.is_constant());
                assert_eq!(AsDegree::Two.apply(&s.z), beta);
            }
        }
    }
}
