//! Places of GF(2^m)(t), valuations and divisors.

use alloc::collections::BTreeMap;
use core::cmp::Ordering;
use core::fmt;

use super::factor::{is_irreducible, poly_factor};
use super::field::{FieldElem, FieldSpec};
use super::poly::Poly;
use super::ratfunc::RatFunc;
use super::AlgebraError;

/// A place of the rational function field: a monic irreducible polynomial,
/// or the pole of `t`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Place {
    Finite(Poly),
    Infinite,
}

impl Place {
    /// Validates that `p` is monic and irreducible.
    pub fn finite(p: Poly) -> Result<Self, AlgebraError> {
        if !p.is_monic() || !is_irreducible(&p) {
            return Err(AlgebraError::NotAPlace);
        }
        Ok(Place::Finite(p))
    }

    /// The zero of `t`.
    pub fn t(field: FieldSpec) -> Self {
        Place::Finite(Poly::t(field))
    }

    /// The zero of `t + c`.
    pub fn t_plus(c: FieldElem) -> Self {
        Place::Finite(&Poly::t(c.spec()) + &Poly::constant(c))
    }

    pub fn degree(&self) -> u64 {
        match self {
            Place::Finite(p) => p.deg0() as u64,
            Place::Infinite => 1,
        }
    }
}

impl PartialOrd for Place {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Finite places by degree then coefficients, the infinite place last.
impl Ord for Place {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Place::Finite(a), Place::Finite(b)) => a.cmp_graded(b),
            (Place::Finite(_), Place::Infinite) => Ordering::Less,
            (Place::Infinite, Place::Finite(_)) => Ordering::Greater,
            (Place::Infinite, Place::Infinite) => Ordering::Equal,
        }
    }
}

impl fmt::Debug for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Finite(p) => write!(f, "{p}"),
            Place::Infinite => f.write_str("inf"),
        }
    }
}

/// Valuation of a nonzero `f` at `place`.
pub fn ord_at(f: &RatFunc, place: &Place) -> Result<i64, AlgebraError> {
    if f.is_zero() {
        return Err(AlgebraError::ZeroElement);
    }
    Ok(match place {
        Place::Finite(p) => {
            f.numer().multiplicity(p) as i64 - f.denom().multiplicity(p) as i64
        }
        Place::Infinite => f.denom().deg0() as i64 - f.numer().deg0() as i64,
    })
}

/// A finite formal sum of places with nonzero integer multiplicities.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Divisor {
    support: BTreeMap<Place, i64>,
}

impl Divisor {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `n` to the multiplicity of `place`, dropping it when it reaches 0.
    pub fn add(&mut self, place: Place, n: i64) {
        let e = self.support.entry(place).or_insert(0);
        *e += n;
        if *e == 0 {
            self.support.retain(|_, v| *v != 0);
        }
    }

    pub fn multiplicity(&self, place: &Place) -> i64 {
        self.support.get(place).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Place, i64)> {
        self.support.iter().map(|(p, &n)| (p, n))
    }

    pub fn is_empty(&self) -> bool {
        self.support.is_empty()
    }

    pub fn len(&self) -> usize {
        self.support.len()
    }

    /// Sum of multiplicity times place degree.
    pub fn degree(&self) -> i64 {
        self.support.iter().map(|(p, &n)| n * p.degree() as i64).sum()
    }

    /// Degree of the zero part.
    pub fn zero_degree(&self) -> u64 {
        self.support.iter().filter(|(_, &n)| n > 0).map(|(p, &n)| n as u64 * p.degree()).sum()
    }

    /// Degree of the pole part.
    pub fn pole_degree(&self) -> u64 {
        self.support.iter().filter(|(_, &n)| n < 0).map(|(p, &n)| (-n) as u64 * p.degree()).sum()
    }
}

impl fmt::Display for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.support.is_empty() {
            return f.write_str("0");
        }
        for (i, (p, n)) in self.support.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{n}*[{p}]")?;
        }
        Ok(())
    }
}

/// The principal divisor of a nonzero element.
pub fn divisor_of(f: &RatFunc) -> Result<Divisor, AlgebraError> {
    if f.is_zero() {
        return Err(AlgebraError::ZeroElement);
    }
    let mut div = Divisor::new();
    for (place, e) in poly_factor(f.numer())?.factors {
        div.add(place, e as i64);
    }
    for (place, e) in poly_factor(f.denom())?.factors {
        div.add(place, -(e as i64));
    }
    div.add(Place::Infinite, f.denom().deg0() as i64 - f.numer().deg0() as i64);
    Ok(div)
}

/// Degree of the zero divisor, computed as `max(deg num, deg den)`.
pub fn height(f: &RatFunc) -> Result<u64, AlgebraError> {
    f.height()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divisor_of_t() {
        let f = FieldSpec::gf256();
        let t = RatFunc::t(f);
        let d = divisor_of(&t).unwrap();
        assert_eq!(d.multiplicity(&Place::t(f)), 1);
        assert_eq!(d.multiplicity(&Place::Infinite), -1);
        assert_eq!(d.len(), 2);
        assert_eq!(ord_at(&t, &Place::t(f)), Ok(1));
        assert_eq!(ord_at(&t, &Place::Infinite), Ok(-1));
    }

    #[test]
    fn constants_have_empty_divisor() {
        let f = FieldSpec::gf256();
        let c = RatFunc::constant(f.elem(0x9a).unwrap());
        assert!(divisor_of(&c).unwrap().is_empty());
        assert_eq!(divisor_of(&RatFunc::zero(f)), Err(AlgebraError::ZeroElement));
        assert_eq!(ord_at(&RatFunc::zero(f), &Place::Infinite), Err(AlgebraError::ZeroElement));
    }

    #[test]
    fn pole_of_order_three() {
        let f = FieldSpec::gf256();
        let t1 = RatFunc::t(f) + RatFunc::one(f);
        let g = t1.pow(3).inv().unwrap();
        let place = Place::t_plus(f.one());
        assert_eq!(ord_at(&g, &place), Ok(-3));
        assert_eq!(ord_at(&g, &Place::Infinite), Ok(3));
    }

    #[test]
    fn place_validation() {
        let f = FieldSpec::gf2();
        assert!(Place::finite(Poly::from_bits(f, &[1, 1, 1]).unwrap()).is_ok());
        assert_eq!(
            Place::finite(Poly::from_bits(f, &[1, 0, 1]).unwrap()),
            Err(AlgebraError::NotAPlace)
        );
        let g = FieldSpec::gf256();
        let not_monic = Poly::from_bits(g, &[1, 2]).unwrap();
        assert_eq!(Place::finite(not_monic), Err(AlgebraError::NotAPlace));
    }

    #[test]
    fn zero_and_pole_parts_balance() {
        let f = FieldSpec::gf2();
        let num = Poly::from_bits(f, &[1, 1, 0, 1]).unwrap();
        let den = Poly::from_bits(f, &[0, 0, 1, 1]).unwrap();
        let r = RatFunc::new(num, den).unwrap();
        let d = divisor_of(&r).unwrap();
        assert_eq!(d.degree(), 0);
        assert_eq!(d.zero_degree(), d.pole_degree());
        assert_eq!(d.zero_degree(), r.height().unwrap());
    }
}
