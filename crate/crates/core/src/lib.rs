//! Exact algebra over the rational function field K = GF(2^m)(t) and the
//! machinery that expresses "y is a 2-power of x" by equations over K:
//!
//! - [`algebra`]: GF(2^m), polynomials, rational functions, places,
//!   divisors, heights, factorization.
//! - [`artin_schreier`]: solving `z^2 + z = b` and `z^4 + z = b` in K.
//! - [`certificates`]: witness construction and checking for
//!   `t^(2^s)`-membership and `u^(2^s)`-membership, the power-relation test
//!   and bounded counterexample searches.
//! - [`reducer`]: a DSL for systems over (N, +, |2), their compilation to
//!   constraint systems over K, and an exhaustive N-side solver.
//! - [`expr`]: the textual expression syntax for elements of K.

#![no_std]

extern crate alloc;

pub mod algebra;
pub mod artin_schreier;
pub mod certificates;
pub mod expr;
pub mod reducer;

pub use algebra::{AlgebraError, FieldElem, FieldSpec, Place, Poly, RatFunc};
