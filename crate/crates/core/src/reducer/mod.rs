//! Systems over (N, +, |2), their translation into systems over K, and the
//! tools to solve, embed and check them.

pub mod check;
pub mod compile;
pub mod dsl;
pub mod expand;
pub mod nat;

pub use check::{atom_holds, check_ksystem, embed, KAssignment, KCheck};
pub use compile::{compile, KAtom, KSystem};
pub use dsl::{div2_witness, parse_nsystem, DslError, DslErrorKind, NAtom, NSystem, Span};
pub use expand::{expand, extend_assignment, Constraint, ExAssignment, ExpandError, ExpandedSystem, Expr};
pub use nat::{solve_nat, NAssignment};
