//! Embedding solutions over N into K and checking systems over K.

use alloc::vec::Vec;

use super::compile::{KAtom, KSystem};
use super::dsl::div2_witness;
use super::nat::NAssignment;
use crate::algebra::{ord_at, FieldSpec, Place, RatFunc};
use crate::certificates::check_power_relation;

/// Values indexed like `KSystem::variables`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KAssignment {
    pub values: Vec<RatFunc>,
}

impl KAssignment {
    pub fn get(&self, ks: &KSystem, name: &str) -> Option<&RatFunc> {
        ks.var_index(name).and_then(|i| self.values.get(i))
    }
}

/// `z = t^n` for each variable; for `a |2 b` with `b = 2^s a` the auxiliary
/// is `z_a^(2^s)`, and `z_a` itself when no such `s` exists.
pub fn embed(ks: &KSystem, na: &NAssignment, field: FieldSpec) -> KAssignment {
    assert_eq!(na.values.len(), ks.primary, "assignment must cover every variable");
    let mut values: Vec<RatFunc> =
        na.values.iter().map(|&n| RatFunc::t_pow(field, n as i64)).collect();
    values.resize(ks.variables.len(), RatFunc::one(field));
    for (i, atom) in ks.atoms.iter().enumerate() {
        let KAtom::PowerLink { x, w } = *atom else { continue };
        let target = ks.atoms[i + 1..].iter().find_map(|a| match *a {
            KAtom::OrdMatch { w: w2, y } if w2 == w => Some(y),
            _ => None,
        });
        let s = target.and_then(|y| div2_witness(na.values[x], na.values[y])).unwrap_or(0);
        values[w] = values[x].frobenius_pow(s);
    }
    KAssignment { values }
}

fn ord_t(z: &RatFunc) -> Option<i64> {
    ord_at(z, &Place::t(z.field())).ok()
}

/// Whether a single atom holds.
pub fn atom_holds(atom: &KAtom, values: &[RatFunc]) -> bool {
    match *atom {
        KAtom::MulEq(a, b, c) => values[c] == &values[a] * &values[b],
        KAtom::PowerLink { x, w } => {
            matches!(check_power_relation(&values[x], &values[w]), Ok(Some(_)))
        }
        KAtom::OrdMatch { w, y } => match (ord_t(&values[w]), ord_t(&values[y])) {
            (Some(a), Some(b)) => a == b,
            _ => false,
        },
        KAtom::IntMember(z) => values[z].is_zero() || ord_t(&values[z]).is_some_and(|o| o >= 0),
        KAtom::OrdConst(z, k) => ord_t(&values[z]) == Some(k as i64),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KCheck {
    /// Indices of failing atoms, in order.
    pub failures: Vec<usize>,
}

impl KCheck {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn first_failure(&self) -> Option<usize> {
        self.failures.first().copied()
    }
}

pub fn check_ksystem(ks: &KSystem, ka: &KAssignment) -> KCheck {
    assert_eq!(ka.values.len(), ks.variables.len(), "assignment must cover every variable");
    let failures = (0..ks.atoms.len()).filter(|&i| !atom_holds(&ks.atoms[i], &ka.values)).collect();
    KCheck { failures }
}
