//! Factorization over GF(2^m): squarefree decomposition, distinct-degree
//! splitting, then equal-degree splitting with the trace map to GF(2).
//!
//! Cantor-Zassenhaus needs `(q^d - 1)/2`, which does not exist for even `q`.
//! Instead, for a random `a`, `Tr(a) = a + a^2 + ... + a^(2^(md-1))` reduces
//! to 0 or 1 modulo every degree-`d` factor, each with probability 1/2, so
//! `gcd(g, Tr(a))` splits `g` half of the time.

use alloc::vec;
use alloc::vec::Vec;

use rand::rngs::SmallRng;
use rand::{Rng, SeedableRng};

use super::field::FieldElem;
use super::place::Place;
use super::poly::Poly;
use super::AlgebraError;

const DEFAULT_SEED: u64 = 0x005e_ed0f_c4a2;

/// `leading * prod(p_i ^ e_i)` with distinct monic irreducible `p_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub leading: FieldElem,
    /// Sorted by degree, then coefficients from the top down.
    pub factors: Vec<(Place, u32)>,
}

impl Factorization {
    /// Multiplies the factorization back out.
    pub fn expand(&self) -> Poly {
        let mut acc = Poly::constant(self.leading);
        for (place, e) in &self.factors {
            if let Place::Finite(p) = place {
                acc = &acc * &p.pow(*e as u64);
            }
        }
        acc
    }
}

/// Factors a nonzero polynomial into monic irreducible places.
pub fn poly_factor(p: &Poly) -> Result<Factorization, AlgebraError> {
    poly_factor_seeded(p, DEFAULT_SEED)
}

/// As [`poly_factor`], with an explicit seed for the splitting step. The
/// result does not depend on the seed.
pub fn poly_factor_seeded(p: &Poly, seed: u64) -> Result<Factorization, AlgebraError> {
    if p.is_zero() {
        return Err(AlgebraError::ZeroElement);
    }
    let leading = p.leading();
    let monic = p.monic();
    let mut rng = SmallRng::seed_from_u64(seed);
    let mut factors: Vec<(Poly, u32)> = Vec::new();
    for (sqf, mult) in squarefree(&monic) {
        for (block, d) in distinct_degree(&sqf) {
            let mut parts = Vec::new();
            equal_degree(&block, d, &mut rng, &mut parts);
            factors.extend(parts.into_iter().map(|q| (q, mult)));
        }
    }
    factors.sort_by(|a, b| a.0.cmp_graded(&b.0));
    Ok(Factorization {
        leading,
        factors: factors.into_iter().map(|(q, e)| (Place::Finite(q), e)).collect(),
    })
}

/// Squarefree decomposition of a monic polynomial: pairs `(f_i, e_i)` with
/// each `f_i` squarefree, pairwise coprime, and `prod f_i^e_i = f`.
pub fn squarefree(f: &Poly) -> Vec<(Poly, u32)> {
    let mut out = Vec::new();
    squarefree_into(f, 1, &mut out);
    out
}

fn squarefree_into(f: &Poly, scale: u32, out: &mut Vec<(Poly, u32)>) {
    if f.is_constant() {
        return;
    }
    let mut c = f.gcd(&f.derivative());
    let mut w = f.div_exact(&c).unwrap();
    let mut i = 1;
    while !w.is_constant() {
        let y = w.gcd(&c);
        let fac = w.div_exact(&y).unwrap();
        if !fac.is_constant() {
            out.push((fac, i * scale));
        }
        w = y;
        c = c.div_exact(&w).unwrap();
        i += 1;
    }
    // what remains has zero derivative, so it is a square
    if !c.is_constant() {
        let root = c.sqrt().expect("remaining part is a square");
        squarefree_into(&root, scale * 2, out);
    }
}

/// Splits a squarefree monic polynomial into blocks whose irreducible
/// factors all share the degree `d` reported alongside.
pub fn distinct_degree(f: &Poly) -> Vec<(Poly, usize)> {
    let field = f.field();
    let m = field.degree() as u64;
    let t = Poly::t(field);
    let mut out = Vec::new();
    let mut g = f.clone();
    let mut h = t.rem(&g).unwrap_or_else(|_| t.clone());
    let mut d = 1;
    while g.deg0() >= 2 * d {
        // h = t^(q^d) mod g
        h = h.frobenius_mod(m, &g);
        let fac = g.gcd(&(&h + &t));
        if !fac.is_one() {
            g = g.div_exact(&fac).unwrap();
            h = h.rem(&g).unwrap();
            out.push((fac, d));
        }
        d += 1;
    }
    if !g.is_constant() {
        let deg = g.deg0();
        out.push((g, deg));
    }
    out
}

fn equal_degree(g: &Poly, d: usize, rng: &mut SmallRng, out: &mut Vec<Poly>) {
    let n = g.deg0();
    if n == d {
        out.push(g.clone());
        return;
    }
    let field = g.field();
    let mask = field.mask();
    let trace_len = field.degree() as usize * d;
    loop {
        let coeffs: Vec<u32> = (0..n).map(|_| rng.random::<u32>() & mask).collect();
        let a = Poly::from_raw(field, coeffs);
        if a.is_constant() {
            continue;
        }
        let mut acc = a.clone();
        let mut x = a;
        for _ in 1..trace_len {
            x = x.square().rem(g).unwrap();
            acc += &x;
        }
        let h = g.gcd(&acc);
        if !h.is_one() && h.deg0() < n {
            let rest = g.div_exact(&h).unwrap();
            equal_degree(&h, d, rng, out);
            equal_degree(&rest, d, rng, out);
            return;
        }
    }
}

/// Ben-Or test: no factor of degree at most `n/2`.
pub fn is_irreducible(p: &Poly) -> bool {
    let Some(n) = p.degree() else { return false };
    if n == 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    let field = p.field();
    let m = field.degree() as u64;
    let t = Poly::t(field);
    let mut h = t.rem(p).unwrap();
    for _ in 1..=n / 2 {
        h = h.frobenius_mod(m, p);
        if !p.gcd(&(&h + &t)).is_one() {
            return false;
        }
    }
    true
}

/// Every monic polynomial of exactly degree `d`, in increasing coefficient
/// order. Exponential; meant for oracles on tiny fields.
pub fn monic_of_degree(field: super::field::FieldSpec, d: usize) -> impl Iterator<Item = Poly> {
    let q = field.order();
    let total = q.checked_pow(d as u32).expect("enumeration too large");
    (0..total).map(move |mut idx| {
        let mut coeffs = vec![0u32; d + 1];
        for c in coeffs.iter_mut().take(d) {
            *c = (idx % q) as u32;
            idx /= q;
        }
        coeffs[d] = 1;
        Poly::from_raw(field, coeffs)
    })
}
