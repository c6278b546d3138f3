use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::hash::{Hash, Hasher};

use super::Atom;

/// A swapping `(a b)` of two distinct atoms. `(a b)` and `(b a)` are equal.
#[derive(Clone, Debug)]
pub struct Swapping {
    first: Atom,
    second: Atom,
}

impl Swapping {
    /// Returns `None` when both atoms coincide.
    pub fn new(first: Atom, second: Atom) -> Option<Self> {
        (first != second).then_some(Swapping { first, second })
    }

    pub fn first(&self) -> &Atom {
        &self.first
    }

    pub fn second(&self) -> &Atom {
        &self.second
    }

    pub fn apply(&self, a: &Atom) -> Atom {
        if *a == self.first {
            self.second.clone()
        } else if *a == self.second {
            self.first.clone()
        } else {
            a.clone()
        }
    }

    fn key(&self) -> (&Atom, &Atom) {
        if self.first <= self.second {
            (&self.first, &self.second)
        } else {
            (&self.second, &self.first)
        }
    }
}

impl PartialEq for Swapping {
    fn eq(&self, other: &Self) -> bool {
        self.key() == other.key()
    }
}

impl Eq for Swapping {}

impl Hash for Swapping {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.key().hash(state)
    }
}

impl PartialOrd for Swapping {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Swapping {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

/// A finite permutation represented as a list of swappings.
///
/// The list is read head first: `(b c)::π · a` applies `(b c)` and then `π`.
/// Appending `p ⊕ q` therefore means "apply `p`, then `q`". Lists are kept
/// verbatim; two permutations with different lists may still act the same,
/// which is what [`Permutation::same_action`] decides.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    swaps: Vec<Swapping>,
}

impl Permutation {
    pub fn identity() -> Self {
        Permutation { swaps: Vec::new() }
    }

    pub fn from_swaps(swaps: Vec<Swapping>) -> Self {
        Permutation { swaps }
    }

    /// A single swapping `(a b)`; the identity when `a == b`.
    pub fn swap(a: Atom, b: Atom) -> Self {
        Permutation {
            swaps: Swapping::new(a, b).into_iter().collect(),
        }
    }

    /// Builds a permutation from `(a, b)` name pairs, skipping degenerate pairs.
    pub fn from_pairs<'a>(pairs: impl IntoIterator<Item = (&'a str, &'a str)>) -> Self {
        Permutation {
            swaps: pairs
                .into_iter()
                .filter_map(|(a, b)| Swapping::new(Atom::new(a), Atom::new(b)))
                .collect(),
        }
    }

    pub fn swaps(&self) -> &[Swapping] {
        &self.swaps
    }

    /// True when the swapping list is empty (`nil`, printed `id`).
    pub fn is_nil(&self) -> bool {
        self.swaps.is_empty()
    }

    pub fn apply_atom(&self, a: &Atom) -> Atom {
        self.swaps.iter().fold(a.clone(), |acc, s| s.apply(&acc))
    }

    pub fn inverse(&self) -> Self {
        Permutation {
            swaps: self.swaps.iter().rev().cloned().collect(),
        }
    }

    /// `self ⊕ other`: act with `self` first, then with `other`.
    pub fn append(&self, other: &Permutation) -> Self {
        let mut swaps = Vec::with_capacity(self.swaps.len() + other.swaps.len());
        swaps.extend(self.swaps.iter().cloned());
        swaps.extend(other.swaps.iter().cloned());
        Permutation { swaps }
    }

    /// Atoms mentioned anywhere in the list, in order of first appearance.
    pub fn mentioned_atoms(&self) -> Vec<Atom> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for s in &self.swaps {
            for a in [&s.first, &s.second] {
                if seen.insert(a.clone()) {
                    out.push(a.clone());
                }
            }
        }
        out
    }

    /// `dom(π) = { a | π·a ≠ a }`, in order of first appearance in the list.
    pub fn domain(&self) -> Vec<Atom> {
        self.mentioned_atoms()
            .into_iter()
            .filter(|a| self.apply_atom(a) != *a)
            .collect()
    }

    /// Acts as the identity on every atom.
    pub fn is_identity_action(&self) -> bool {
        self.domain().is_empty()
    }

    /// `ds(π, π') = { a | π·a ≠ π'·a }`.
    pub fn difference_set(&self, other: &Permutation) -> BTreeSet<Atom> {
        let mut candidates: BTreeSet<Atom> = self.mentioned_atoms().into_iter().collect();
        candidates.extend(other.mentioned_atoms());
        candidates
            .into_iter()
            .filter(|a| self.apply_atom(a) != other.apply_atom(a))
            .collect()
    }

    pub fn same_action(&self, other: &Permutation) -> bool {
        self.difference_set(other).is_empty()
    }
}

/// `ds(p, q)` as a free function.
pub fn difference_set(p: &Permutation, q: &Permutation) -> BTreeSet<Atom> {
    p.difference_set(q)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn at(s: &str) -> Atom {
        Atom::new(s)
    }

    fn perm(pairs: &[(&str, &str)]) -> Permutation {
        Permutation::from_pairs(pairs.iter().copied())
    }

    #[test]
    fn identity_fixes_atoms() {
        assert_eq!(Permutation::identity().apply_atom(&at("a")), at("a"));
    }

    #[test]
    fn head_swap_applies_first() {
        assert_eq!(perm(&[("a", "b")]).apply_atom(&at("a")), at("b"));
        // (a b)(b c): a -> b -> c
        assert_eq!(perm(&[("a", "b"), ("b", "c")]).apply_atom(&at("a")), at("c"));
    }

    #[test]
    fn swap_list_reads_as_cycle_product() {
        let p = perm(&[("a", "b"), ("e", "f"), ("c", "d"), ("a", "c")]);
        let expect = [("a", "b"), ("b", "c"), ("c", "d"), ("d", "a"), ("e", "f"), ("f", "e")];
        for (x, y) in expect {
            assert_eq!(p.apply_atom(&at(x)), at(y), "{x}");
        }
    }

    #[test]
    fn inverse_reverses_the_list() {
        assert_eq!(Permutation::identity().inverse(), Permutation::identity());
        assert_eq!(
            perm(&[("a", "b"), ("c", "d")]).inverse(),
            perm(&[("c", "d"), ("a", "b")])
        );
    }

    #[test]
    fn inverse_undoes_on_all_mentioned_atoms() {
        let p = perm(&[("a", "b"), ("e", "f"), ("c", "d"), ("a", "c")]);
        let inv = p.inverse();
        for x in ["a", "b", "c", "d", "e", "f", "g"] {
            assert_eq!(inv.apply_atom(&p.apply_atom(&at(x))), at(x));
        }
    }

    #[test]
    fn swapping_is_unordered() {
        assert_eq!(perm(&[("a", "b")]), perm(&[("b", "a")]));
        assert!(Swapping::new(at("a"), at("a")).is_none());
    }

    #[test]
    fn difference_sets() {
        let nil = Permutation::identity();
        assert!(nil.difference_set(&nil).is_empty());
        let ab = perm(&[("a", "b")]);
        assert_eq!(
            ab.difference_set(&nil),
            [at("a"), at("b")].into_iter().collect()
        );
        let abcd = perm(&[("a", "b"), ("c", "d")]);
        assert_eq!(
            difference_set(&ab, &abcd),
            [at("c"), at("d")].into_iter().collect()
        );
    }

    #[test]
    fn self_cancelling_list_has_empty_domain() {
        let p = perm(&[("a", "b"), ("a", "b")]);
        assert!(p.domain().is_empty());
        assert!(!p.is_nil());
        assert!(p.same_action(&Permutation::identity()));
    }
}
