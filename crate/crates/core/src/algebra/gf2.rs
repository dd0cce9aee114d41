//! Bit-level helpers over GF(2): dense polynomials packed in a `u64` and a
//! small Gaussian elimination solver on packed bit vectors.

use alloc::vec;
use alloc::vec::Vec;

/// Degree of a packed GF(2) polynomial, `None` for zero.
#[inline]
pub fn degree(p: u64) -> Option<u32> {
    if p == 0 {
        None
    } else {
        Some(63 - p.leading_zeros())
    }
}

/// Carry-less product of two 32-bit operands.
#[inline]
pub fn clmul(a: u32, b: u32) -> u64 {
    let a = a as u64;
    let mut b = b;
    let mut r = 0u64;
    while b != 0 {
        r ^= a << b.trailing_zeros();
        b &= b - 1;
    }
    r
}

/// Reduces `x` modulo `modulus` (degree `m`).
#[inline]
pub fn reduce(mut x: u64, modulus: u64, m: u32) -> u64 {
    while x >> m != 0 {
        let top = 63 - x.leading_zeros();
        x ^= modulus << (top - m);
    }
    x
}

fn mulmod(a: u64, b: u64, modulus: u64, m: u32) -> u64 {
    reduce(clmul(a as u32, b as u32), modulus, m)
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let db = 63 - b.leading_zeros();
        while a != 0 && 63 - a.leading_zeros() >= db {
            let da = 63 - a.leading_zeros();
            a ^= b << (da - db);
        }
        core::mem::swap(&mut a, &mut b);
    }
    a
}

/// Ben-Or irreducibility test for a packed polynomial of degree 1..=32.
pub fn is_irreducible(f: u64) -> bool {
    let Some(m) = degree(f) else { return false };
    if m == 0 || m > 32 {
        return false;
    }
    // x^(2^i) mod f for i = 1..=m/2 must be coprime to x^(2^i) + x
    let x = reduce(0b10, f, m);
    let mut xp = x;
    for _ in 1..=m / 2 {
        xp = mulmod(xp, xp, f, m);
        if gcd(f, xp ^ x) != 1 {
            return false;
        }
    }
    true
}

/// Packed bit vector used as a row or column of a GF(2) matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitVec {
    words: Vec<u64>,
    len: usize,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        Self { words: vec![0; len.div_ceil(64)], len }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, bit: bool) {
        let mask = 1u64 << (i % 64);
        if bit {
            self.words[i / 64] |= mask;
        } else {
            self.words[i / 64] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        self.words[i / 64] ^= 1u64 << (i % 64);
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }
}

/// Solves `A x = b` over GF(2) where `A` is given by its columns.
///
/// Returns one solution with all free variables set to zero, or `None` when
/// the system is inconsistent.
pub fn solve(columns: &[BitVec], rhs: &BitVec) -> Option<BitVec> {
    let ncols = columns.len();
    let nrows = rhs.len();
    // Row-major augmented matrix; bit `ncols` holds the right-hand side.
    let mut rows: Vec<BitVec> = (0..nrows)
        .map(|r| {
            let mut row = BitVec::zeros(ncols + 1);
            for (c, col) in columns.iter().enumerate() {
                if col.get(r) {
                    row.set(c, true);
                }
            }
            if rhs.get(r) {
                row.set(ncols, true);
            }
            row
        })
        .collect();

    let mut pivots = Vec::new();
    let mut rank = 0;
    for c in 0..ncols {
        let Some(p) = (rank..nrows).find(|&r| rows[r].get(c)) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row.get(c) {
                row.xor_assign(&pivot);
            }
        }
        pivots.push(c);
        rank += 1;
        if rank == nrows {
            break;
        }
    }
    if rows[rank..].iter().any(|row| row.get(ncols)) {
        return None;
    }
    let mut x = BitVec::zeros(ncols);
    for (r, &c) in pivots.iter().enumerate() {
        if rows[r].get(ncols) {
            x.set(c, true);
        }
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn aes_modulus_is_irreducible() {
        assert!(is_irreducible(0x11b));
        assert!(is_irreducible(0b111));
        assert!(is_irreducible(0b11));
        assert!(!is_irreducible(0b101));
        assert!(!is_irreducible(0x100));
    }

    #[test]
    fn small_system() {
        // x0 + x1 = 1, x1 = 1  ->  x0 = 0, x1 = 1
        let mut c0 = BitVec::zeros(2);
        c0.set(0, true);
        let mut c1 = BitVec::zeros(2);
        c1.set(0, true);
        c1.set(1, true);
        let mut b = BitVec::zeros(2);
        b.set(0, true);
        b.set(1, true);
        let x = solve(&[c0.clone(), c1.clone()], &b).unwrap();
        assert!(!x.get(0));
        assert!(x.get(1));

        // x0 = 0 and x0 = 1 is inconsistent
        let mut col = BitVec::zeros(2);
        col.set(0, true);
        col.set(1, true);
        let mut rhs = BitVec::zeros(2);
        rhs.set(1, true);
        assert!(solve(&[col], &rhs).is_none());
    }
}
