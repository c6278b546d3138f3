use std::collections::BTreeSet;
use std::fmt;

use crate::nominal::{Atom, Permutation};

/// A cycle `(a₀ … a_{k-1})`, mapping each atom to the next one and the last
/// back to the first. Rotations of the same cycle are equal.
#[derive(Clone, Debug)]
pub struct Cycle {
    atoms: Vec<Atom>,
}

impl Cycle {
    /// `None` if `atoms` is empty or repeats an atom.
    pub fn new(atoms: Vec<Atom>) -> Option<Cycle> {
        let distinct: BTreeSet<&Atom> = atoms.iter().collect();
        (!atoms.is_empty() && distinct.len() == atoms.len()).then_some(Cycle { atoms })
    }

    pub fn from_names(names: &[&str]) -> Option<Cycle> {
        Cycle::new(names.iter().map(Atom::new).collect())
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn contains(&self, a: &Atom) -> bool {
        self.atoms.contains(a)
    }

    pub fn successor(&self, a: &Atom) -> Option<&Atom> {
        let i = self.atoms.iter().position(|b| b == a)?;
        Some(&self.atoms[(i + 1) % self.atoms.len()])
    }

    /// Swapping list acting as this cycle: `(a₀ a₁)(a₀ a₂)…(a₀ a_{k-1})`.
    pub fn to_permutation(&self) -> Permutation {
        let first = &self.atoms[0];
        Permutation::from_swaps(
            self.atoms[1..]
                .iter()
                .filter_map(|b| crate::nominal::Swapping::new(first.clone(), b.clone()))
                .collect(),
        )
    }

    fn rotation_key(&self) -> Vec<&Atom> {
        let start = (0..self.atoms.len())
            .min_by_key(|&i| &self.atoms[i])
            .unwrap_or(0);
        self.atoms[start..].iter().chain(&self.atoms[..start]).collect()
    }
}

impl PartialEq for Cycle {
    fn eq(&self, other: &Self) -> bool {
        self.rotation_key() == other.rotation_key()
    }
}

impl Eq for Cycle {}

impl fmt::Display for Cycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, a) in self.atoms.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{a}")?;
        }
        f.write_str(")")
    }
}

/// Disjoint cycles of `p`, each started at its earliest atom in the list.
/// Cycles of length one are left out; see [`fixed_atoms`].
pub fn cycle_decompose(p: &Permutation) -> Vec<Cycle> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for a in p.mentioned_atoms() {
        if seen.contains(&a) {
            continue;
        }
        let mut atoms = vec![a.clone()];
        seen.insert(a.clone());
        let mut next = p.apply_atom(&a);
        while next != a {
            seen.insert(next.clone());
            atoms.push(next.clone());
            next = p.apply_atom(&next);
        }
        if atoms.len() > 1 {
            out.push(Cycle { atoms });
        }
    }
    out
}

/// Atoms mentioned by the list but fixed by it: the omitted 1-cycles.
pub fn fixed_atoms(p: &Permutation) -> Vec<Atom> {
    p.mentioned_atoms()
        .into_iter()
        .filter(|a| p.apply_atom(a) == *a)
        .collect()
}
