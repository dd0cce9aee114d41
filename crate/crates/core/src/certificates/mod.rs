//! Witnesses for membership in the sets of powers of `t` and of
//! `u = (x^2 + t^2 + t)/(x^2 + t)`, and bounded searches for counterexamples
//! to the lemmas behind them.

pub mod membership;
pub mod power;
pub mod s1;
pub mod search;
pub mod t1;

use crate::algebra::{AlgebraError, FieldElem, FieldSpec, RatFunc};

pub use membership::{member_s, member_s1, member_t, member_t1, s1_by_certificate, s1_by_solver};
pub use power::{
    check_power_relation, compute_u, compute_u_over, compute_v, compute_v_over, is_2power_of,
    telescope, PowerPair, PowerRelation,
};
pub use s1::{build_s1_certificate, verify_s1_certificate, SCertificate, SFailure, SFamilyEntry};
pub use search::{
    classify_basecase, enumerate_height, lemma_sigma_search, search_basecase,
    search_basecase_counterexample, BasecaseReport, BasecaseVerdict,
};
pub use t1::{build_t1_certificate, verify_t1_certificate, MuEntry, TCertificate, TEntry, TFailure};

/// The uniformizer a certificate is written over: `t`, or `1/t` for the
/// mirrored variant.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Base {
    #[default]
    T,
    InvT,
}

impl Base {
    pub fn from_inverted(inverted: bool) -> Self {
        if inverted {
            Base::InvT
        } else {
            Base::T
        }
    }

    pub fn value(self, field: FieldSpec) -> RatFunc {
        match self {
            Base::T => RatFunc::t(field),
            Base::InvT => RatFunc::t_pow(field, -1),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum CertError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("denominator {0} vanishes")]
    DegenerateDenominator(&'static str),
    #[error("power relation holds at s = {s} but y is not x^(2^s)")]
    TheoremViolation { s: u32 },
    #[error("certificate and solver disagree on {0}")]
    PathDisagreement(RatFunc),
    #[error("search space of {0} candidates is too large")]
    SearchTooLarge(u128),
    #[error("argument must be nonzero")]
    ZeroArgument,
}

/// Whether the constants lie in pairwise distinct Frobenius orbits.
pub(crate) fn distinct_orbits(v: &[FieldElem]) -> bool {
    v.iter().enumerate().all(|(i, a)| v[..i].iter().all(|b| !a.same_orbit(*b)))
}
