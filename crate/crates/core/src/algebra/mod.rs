//! Exact arithmetic in GF(2^m) and GF(2^m)(t).

pub mod constants;
pub mod factor;
pub mod field;
pub mod gf2;
pub mod place;
pub mod poly;
pub mod ratfunc;

pub use constants::{inverted_constant_set, make_constant_set_v, orbit_count};
pub use factor::{is_irreducible, poly_factor, Factorization};
pub use field::{field_arith, solve_const_as, FieldElem, FieldOp, FieldSpec};
pub use place::{divisor_of, height, ord_at, Divisor, Place};
pub use poly::Poly;
pub use ratfunc::RatFunc;

use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("operation undefined for the zero element")]
    ZeroElement,
    #[error("extension degree {0} unsupported (1..=32)")]
    UnsupportedDegree(u32),
    #[error("modulus #x{modulus:x} does not have degree {m}")]
    ModulusDegree { m: u32, modulus: u64 },
    #[error("modulus #x{0:x} is reducible over GF(2)")]
    ReducibleModulus(u64),
    #[error("#x{bits:x} is not an element of GF(2^{m})")]
    ElementOutOfRange { bits: u64, m: u32 },
    #[error("not a monic irreducible polynomial")]
    NotAPlace,
    #[error("constant set of size {requested} unavailable; at most {max} orbits besides that of 1")]
    ConstantSetTooLarge { requested: usize, max: u64 },
}
