//! Translation of a system over N into a system over K.
//!
//! A natural number `n` is represented by any `z` with no pole at `t` and
//! `ord_t z = n`. Then `n3 = n1 + n2` becomes `z3 = z1 z2`, and `a |2 b`
//! becomes `w = z_a^(2^s)` for some `s` with `w` and `z_b` of equal order.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use super::dsl::{NAtom, NSystem};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum KAtom {
    /// `z3 = z1 * z2`.
    MulEq(usize, usize, usize),
    /// `w = x^(2^s)` for some `s`.
    PowerLink { x: usize, w: usize },
    /// `w / y` and `y / w` have no pole at `t`.
    OrdMatch { w: usize, y: usize },
    /// No pole at `t`.
    IntMember(usize),
    /// `ord_t z = k`.
    OrdConst(usize, u64),
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct KSystem {
    /// `z_<name>` for each variable over N, then the auxiliaries `w_<k>`.
    pub variables: Vec<String>,
    pub atoms: Vec<KAtom>,
    /// Index of the atom over N each atom came from; `None` for the
    /// membership atoms attached to variables.
    pub origin: Vec<Option<usize>>,
    /// Number of leading variables that mirror variables over N.
    pub primary: usize,
}

impl KSystem {
    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.variables.iter().position(|v| v == name)
    }

    pub fn atom_to_string(&self, atom: &KAtom) -> String {
        atom_text(atom, &self.variables)
    }

    /// Indices of the atoms compiled from atom `n` over N.
    pub fn image_of(&self, n: usize) -> Vec<usize> {
        (0..self.atoms.len()).filter(|&i| self.origin[i] == Some(n)).collect()
    }
}

impl fmt::Display for KSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for atom in &self.atoms {
            writeln!(f, "{}", self.atom_to_string(atom))?;
        }
        Ok(())
    }
}

/// Text of an atom with variables named from `names`.
pub fn atom_text(atom: &KAtom, names: &[String]) -> String {
    let v = |i: usize| names[i].as_str();
    match *atom {
        KAtom::MulEq(a, b, c) => format!("{} = {} * {}", v(c), v(a), v(b)),
        KAtom::PowerLink { x, w } => format!("powerlink({}, {})", v(x), v(w)),
        KAtom::OrdMatch { w, y } => format!("ordmatch({}, {})", v(w), v(y)),
        KAtom::IntMember(z) => format!("int({})", v(z)),
        KAtom::OrdConst(z, k) => format!("ord({}) = {}", v(z), k),
    }
}

pub fn compile(sys: &NSystem) -> KSystem {
    let mut ks = KSystem {
        variables: sys.variables.iter().map(|v| format!("z_{v}")).collect(),
        primary: sys.variables.len(),
        ..KSystem::default()
    };
    for z in 0..sys.variables.len() {
        ks.atoms.push(KAtom::IntMember(z));
        ks.origin.push(None);
    }
    let mut aux = 0;
    for (n, atom) in sys.atoms.iter().enumerate() {
        let push = |ks: &mut KSystem, a: KAtom| {
            ks.atoms.push(a);
            ks.origin.push(Some(n));
        };
        match *atom {
            NAtom::SumEq { a, b, sum } => push(&mut ks, KAtom::MulEq(a, b, sum)),
            NAtom::Div2 { a, b } => {
                aux += 1;
                ks.variables.push(format!("w_{aux}"));
                let w = ks.variables.len() - 1;
                push(&mut ks, KAtom::PowerLink { x: a, w });
                push(&mut ks, KAtom::OrdMatch { w, y: b });
            }
            NAtom::ConstEq { a, k } => push(&mut ks, KAtom::OrdConst(a, k)),
        }
    }
    ks
}
