//! Constant sets with pairwise distinct Frobenius orbits.

use alloc::vec::Vec;

use super::field::{FieldElem, FieldSpec};
use super::AlgebraError;

/// Number of Frobenius orbits of GF(2^m): the binary necklaces of length `m`,
/// `(1/m) * sum over d | m of phi(d) 2^(m/d)`.
pub fn orbit_count(spec: FieldSpec) -> u64 {
    let m = spec.degree() as u64;
    let phi = |mut n: u64| {
        let mut result = n;
        let mut p = 2;
        while p * p <= n {
            if n % p == 0 {
                while n % p == 0 {
                    n /= p;
                }
                result -= result / p;
            }
            p += 1;
        }
        if n > 1 {
            result -= result / n;
        }
        result
    };
    (1..=m).filter(|d| m % d == 0).map(|d| phi(d) << (m / d)).sum::<u64>() / m
}

/// Is `c` the smallest bit pattern of its orbit?
fn is_orbit_min(c: FieldElem) -> bool {
    let mut x = c.square();
    while x != c {
        if x.bits() < c.bits() {
            return false;
        }
        x = x.square();
    }
    true
}

/// A set `V` of `size` constants: `0` first, never `1`, at most one element
/// per Frobenius orbit, each the smallest member of its orbit, in increasing
/// order.
pub fn make_constant_set_v(spec: FieldSpec, size: usize) -> Result<Vec<FieldElem>, AlgebraError> {
    let max = orbit_count(spec) - 1;
    if size == 0 || size as u64 > max {
        return Err(AlgebraError::ConstantSetTooLarge { requested: size, max });
    }
    let mut v = Vec::with_capacity(size);
    for bits in 0..spec.order() {
        if v.len() == size {
            break;
        }
        if bits == 1 {
            continue;
        }
        let c = spec.elem(bits).expect("in range");
        if is_orbit_min(c) {
            v.push(c);
        }
    }
    Ok(v)
}

/// The companion set for the substitution `t -> 1/t`: `{1/c : c in V, c != 0}`
/// together with `0`. Inversion commutes with Frobenius, so orbits stay
/// distinct and `1` stays excluded.
pub fn inverted_constant_set(v: &[FieldElem]) -> Vec<FieldElem> {
    v.iter().map(|c| if c.is_zero() { *c } else { c.inv().expect("nonzero") }).collect()
}
