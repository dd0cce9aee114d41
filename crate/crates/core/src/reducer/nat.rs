//! Bounded exhaustive solving over N.

use alloc::vec;
use alloc::vec::Vec;

use super::dsl::{atom_holds, NSystem};

/// Values indexed like `NSystem::variables`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NAssignment {
    pub values: Vec<u64>,
}

impl NAssignment {
    pub fn get(&self, sys: &NSystem, name: &str) -> Option<u64> {
        sys.var_index(name).and_then(|i| self.values.get(i).copied())
    }

    /// Indices of the atoms of `sys` that fail.
    pub fn failures(&self, sys: &NSystem) -> Vec<usize> {
        (0..sys.atoms.len()).filter(|&i| !sys.atom_holds(i, &self.values)).collect()
    }
}

/// The lexicographically smallest assignment with every value at most
/// `bound`, in variable order.
pub fn solve_nat(sys: &NSystem, bound: u64) -> Option<NAssignment> {
    let n = sys.variables.len();
    // atoms become checkable once their last variable is assigned
    let mut ready: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, atom) in sys.atoms.iter().enumerate() {
        if let Some(&last) = atom.variables().iter().max() {
            ready[last].push(i);
        }
    }
    let mut values = vec![0u64; n];
    if n == 0 {
        return Some(NAssignment { values });
    }
    let mut depth = 0;
    let mut fresh = true;
    loop {
        if !fresh {
            // advance the current position, backtracking on overflow
            loop {
                if values[depth] < bound {
                    values[depth] += 1;
                    break;
                }
                values[depth] = 0;
                if depth == 0 {
                    return None;
                }
                depth -= 1;
            }
        }
        let ok = ready[depth].iter().all(|&i| atom_holds(&sys.atoms[i], &values));
        if ok && depth + 1 == n {
            return Some(NAssignment { values });
        }
        if ok {
            depth += 1;
            values[depth] = 0;
            fresh = true;
        } else {
            fresh = false;
        }
    }
}
