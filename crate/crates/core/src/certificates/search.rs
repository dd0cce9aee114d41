//! Exhaustive searches over elements of bounded height, used to look for
//! counterexamples to the lemmas the certificates rest on.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::{is_2power_of, CertError};
use crate::algebra::factor::monic_of_degree;
use crate::algebra::{FieldSpec, Poly, RatFunc};
use crate::artin_schreier::is_as4_image;

/// Upper limit on the number of (numerator, denominator) pairs visited.
pub const MAX_CANDIDATES: u128 = 1 << 28;

/// Number of (numerator, denominator) pairs [`enumerate_height`] visits.
pub fn candidate_count(field: FieldSpec, h: u32) -> u128 {
    let q = field.order() as u128;
    let nums = q.checked_pow(h + 1).map(|n| n - 1);
    let dens = (0..=h).try_fold(0u128, |acc, d| acc.checked_add(q.checked_pow(d)?));
    match (nums, dens) {
        (Some(n), Some(d)) => n.saturating_mul(d),
        _ => u128::MAX,
    }
}

/// Every nonzero element of height at most `h`, each once, in a fixed order
/// (by denominator, then numerator).
pub fn enumerate_height(field: FieldSpec, h: u32) -> Result<Vec<RatFunc>, CertError> {
    let count = candidate_count(field, h);
    if count > MAX_CANDIDATES {
        return Err(CertError::SearchTooLarge(count));
    }
    let q = field.order();
    let mut out = Vec::new();
    for dd in 0..=h as usize {
        for den in monic_of_degree(field, dd) {
            let total = q.pow(h + 1);
            for code in 1..total {
                let mut coeffs = Vec::with_capacity(h as usize + 1);
                let mut c = code;
                for _ in 0..=h {
                    coeffs.push((c % q) as u32);
                    c /= q;
                }
                let num = Poly::from_raw(field, coeffs);
                if num.gcd(&den).is_one() {
                    out.push(RatFunc::new(num, den.clone()).expect("nonzero"));
                }
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BasecaseVerdict {
    /// `y + t` or `1/y + 1/t` is not of the form `z^4 + z`.
    Unsolvable,
    /// `y = t^(4^k)`.
    Member(u32),
    /// Both equations are solvable but `y` is not a `4^k`-th power of `t`
    /// with `k` within the bound.
    Counterexample,
}

/// Classifies `y` against `y + t, 1/y + 1/t` both being `z^4 + z` images.
pub fn classify_basecase(y: &RatFunc, s_bound: u32) -> BasecaseVerdict {
    let t = RatFunc::t(y.field());
    let Ok(y_inv) = y.inv() else { return BasecaseVerdict::Unsolvable };
    if !is_as4_image(&(y + &t)) || !is_as4_image(&(&y_inv + &t.inv().expect("nonzero"))) {
        return BasecaseVerdict::Unsolvable;
    }
    match is_2power_of(&t, y) {
        Some(r) if r % 2 == 0 && r / 2 <= s_bound => BasecaseVerdict::Member(r / 2),
        _ => BasecaseVerdict::Counterexample,
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BasecaseReport {
    pub examined: usize,
    pub members: Vec<RatFunc>,
    pub counterexamples: Vec<RatFunc>,
}

pub fn search_basecase(field: FieldSpec, height_bound: u32, s_bound: u32) -> Result<BasecaseReport, CertError> {
    let mut report = BasecaseReport::default();
    for y in enumerate_height(field, height_bound)? {
        report.examined += 1;
        match classify_basecase(&y, s_bound) {
            BasecaseVerdict::Unsolvable => {}
            BasecaseVerdict::Member(_) => report.members.push(y),
            BasecaseVerdict::Counterexample => report.counterexamples.push(y),
        }
    }
    Ok(report)
}

/// The first `y` of height at most `height_bound` with `y + t` and
/// `1/y + 1/t` both `z^4 + z` images that is not `t^(4^k)`, `k <= s_bound`.
pub fn search_basecase_counterexample(
    field: FieldSpec,
    height_bound: u32,
    s_bound: u32,
) -> Result<Option<RatFunc>, CertError> {
    Ok(search_basecase(field, height_bound, s_bound)?.counterexamples.into_iter().next())
}

/// All pairs `(sigma, mu)` of height at most `height_bound` (zero included)
/// with `t (sigma^4 + sigma) = mu^4 + mu`, sorted.
pub fn lemma_sigma_search(field: FieldSpec, height_bound: u32) -> Result<Vec<(RatFunc, RatFunc)>, CertError> {
    let mut elems = enumerate_height(field, height_bound)?;
    elems.push(RatFunc::zero(field));
    let as4 = |z: &RatFunc| &z.frobenius_pow(2) + z;
    let mut images: BTreeMap<RatFunc, Vec<&RatFunc>> = BTreeMap::new();
    for mu in &elems {
        images.entry(as4(mu)).or_default().push(mu);
    }
    let t = RatFunc::t(field);
    let mut pairs = Vec::new();
    for sigma in &elems {
        if let Some(mus) = images.get(&(&t * &as4(sigma))) {
            pairs.extend(mus.iter().map(|mu| (sigma.clone(), (*mu).clone())));
        }
    }
    pairs.sort();
    Ok(pairs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;

    fn gf4() -> FieldSpec {
        FieldSpec::with_degree(2).unwrap()
    }

    #[test]
    fn enumeration_counts() {
        // height <= 1 over GF(2): 1, t, 1/t, t + 1, 1/(t + 1), t/(t + 1), (t + 1)/t
        let all = enumerate_height(FieldSpec::gf2(), 1).unwrap();
        assert_eq!(all.len(), 7);
        assert!(all.iter().all(|y| y.height().unwrap() <= 1));
        let mut sorted = all.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), all.len());
        assert!(enumerate_height(FieldSpec::gf256(), 6).is_err());
    }

    #[test]
    fn basecase_examples() {
        let p = |s| parse(s, gf4()).unwrap();
        assert_eq!(classify_basecase(&p("t^4"), 4), BasecaseVerdict::Member(1));
        assert_eq!(classify_basecase(&p("t"), 4), BasecaseVerdict::Member(0));
        assert_eq!(classify_basecase(&p("t^3"), 4), BasecaseVerdict::Unsolvable);
        assert_eq!(search_basecase_counterexample(gf4(), 2, 4), Ok(None));
    }

    #[test]
    fn sigma_examples() {
        let pairs = lemma_sigma_search(gf4(), 1).unwrap();
        let zero = RatFunc::zero(gf4());
        let one = RatFunc::one(gf4());
        assert!(pairs.contains(&(zero.clone(), one.clone())));
        assert!(pairs.contains(&(one, zero)));
        assert!(pairs.iter().all(|(s, _)| (&s.frobenius_pow(2) + s).is_zero()));
        // both kernels have four elements over GF(4)
        assert_eq!(pairs.len(), 16);
    }
}
