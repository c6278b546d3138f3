//! Pseudo-cycles: cycles of terms built from a cycle's atoms with
//! commutative symbols, on which the cycle acts by shifting.

use std::collections::{BTreeSet, VecDeque};

use super::cycle::Cycle;
use crate::nominal::{FunctionSymbol, Term};
use crate::relations::{alpha_c_equiv, FreshnessContext};

/// Representative of a term modulo commutativity: arguments of commutative
/// symbols are put in increasing order. Two terms without abstractions or
/// suspensions are `≈{α,C}` iff their representatives are equal.
pub fn canonical_c(t: &Term) -> Term {
    match t {
        Term::Unit | Term::Atom(_) | Term::Susp(..) => t.clone(),
        Term::Abs(a, b) => Term::abs(a.clone(), canonical_c(b)),
        Term::Pair(l, r) => Term::pair(canonical_c(l), canonical_c(r)),
        Term::App(f, arg) => match &**arg {
            Term::Pair(l, r) if f.is_commutative() => {
                let (l, r) = (canonical_c(l), canonical_c(r));
                if l <= r {
                    Term::comm(f, l, r)
                } else {
                    Term::comm(f, r, l)
                }
            }
            _ => Term::app(f.clone(), canonical_c(arg)),
        },
    }
}

/// A pseudo-cycle `(A₀ … A_{k'-1})` with respect to `cycle`.
#[derive(Clone, Debug)]
pub struct PseudoCycle {
    elements: Vec<Term>,
    cycle: Cycle,
    level: usize,
}

impl PseudoCycle {
    pub fn elements(&self) -> &[Term] {
        &self.elements
    }

    pub fn cycle(&self) -> &Cycle {
        &self.cycle
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn is_unitary(&self) -> bool {
        self.elements.len() == 1
    }

    /// Nesting depth of commutative products; the trivial pseudo-cycle has 0.
    pub fn level(&self) -> usize {
        self.level
    }

    /// Key identifying the pseudo-cycle up to `≈{α,C}` of its elements and
    /// rotation.
    pub fn key(&self) -> Vec<Term> {
        let canon: Vec<Term> = self.elements.iter().map(canonical_c).collect();
        (0..canon.len())
            .map(|r| canon[r..].iter().chain(&canon[..r]).cloned().collect::<Vec<_>>())
            .min()
            .unwrap_or_default()
    }

    /// Elements pairwise inequivalent, and `κ·A_i ≈ A_{i+1}` around the cycle.
    pub fn satisfies_definition(&self) -> bool {
        let ctx = FreshnessContext::new();
        let k = self.elements.len();
        let pi = self.cycle.to_permutation();
        let distinct = (0..k).all(|i| {
            (i + 1..k).all(|j| !alpha_c_equiv(&ctx, &self.elements[i], &self.elements[j]))
        });
        let shifts = (0..k).all(|i| {
            alpha_c_equiv(&ctx, &self.elements[i].permute(&pi), &self.elements[(i + 1) % k])
        });
        distinct && shifts
    }
}

impl std::fmt::Display for PseudoCycle {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("(")?;
        for (i, t) in self.elements.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            match t {
                Term::Atom(_) => write!(f, "{t}")?,
                _ => write!(f, "({t})")?,
            }
        }
        f.write_str(")")
    }
}

/// `κ̄`: the atom terms of `c` in cycle order.
pub fn trivial_pseudo_cycle(c: &Cycle) -> PseudoCycle {
    PseudoCycle {
        elements: c.atoms().iter().map(|a| Term::Atom(a.clone())).collect(),
        cycle: c.clone(),
        level: 0,
    }
}

/// `A_i = P_i * Q_{i+d}` over one period of the resulting sequence.
/// Because `κ` shifts both factors, the result is shifted by `κ` as well;
/// its length is the least period, a divisor of `|P|`.
fn product(p: &PseudoCycle, q: &PseudoCycle, star: &FunctionSymbol, d: usize) -> Option<PseudoCycle> {
    let k = p.len();
    if q.len() != k {
        return None;
    }
    let elems: Vec<Term> = (0..k)
        .map(|i| Term::comm(star, p.elements[i].clone(), q.elements[(i + d) % k].clone()))
        .collect();
    let canon: Vec<Term> = elems.iter().map(canonical_c).collect();
    let period = (1..=k)
        .find(|&per| k.is_multiple_of(per) && (0..k).all(|i| canon[i] == canon[(i + per) % k]))
        .unwrap_or(k);
    Some(PseudoCycle {
        elements: elems[..period].to_vec(),
        cycle: p.cycle.clone(),
        level: p.level.max(q.level) + 1,
    })
}

/// First-instance pseudo-cycles of `pc` built with `star`: elements
/// `B_i * B_{i+d}` over different elements of `pc`, for `1 ≤ d ≤ |pc|/2`.
/// The length is `|pc|`, or `|pc|/2` when `2d = |pc|`.
pub fn first_instance_pseudo_cycles(pc: &PseudoCycle, star: &FunctionSymbol) -> Vec<PseudoCycle> {
    let mut seen = BTreeSet::new();
    (1..=pc.len() / 2)
        .filter_map(|d| product(pc, pc, star, d))
        .filter(|c| c.satisfies_definition())
        .filter(|c| seen.insert(c.key()))
        .collect()
}

/// Pseudo-cycles reachable from `κ̄` by repeated first-instance steps over
/// every commutative symbol of `signature`, up to `max_depth` steps,
/// breadth first, without duplicates up to `≈{α,C}` and rotation. The
/// trivial pseudo-cycle comes first.
pub fn first_instance_closure(
    c: &Cycle,
    signature: &[FunctionSymbol],
    max_depth: usize,
) -> Vec<PseudoCycle> {
    let symbols: Vec<&FunctionSymbol> = signature.iter().filter(|f| f.is_commutative()).collect();
    let root = trivial_pseudo_cycle(c);
    let mut seen: BTreeSet<Vec<Term>> = [root.key()].into_iter().collect();
    let mut out = vec![root];
    let mut frontier = 0;
    for _ in 0..max_depth {
        let end = out.len();
        for i in frontier..end {
            for star in &symbols {
                for child in first_instance_pseudo_cycles(&out[i], star) {
                    if seen.insert(child.key()) {
                        out.push(child);
                    }
                }
            }
        }
        frontier = end;
    }
    out
}

/// Every pseudo-cycle obtainable in one step from `pc`: the first-instance
/// ones, then the products `P_i * P_i`, then `P_i * κ̄_{i+d}` with the
/// trivial pseudo-cycle when lengths agree.
fn children(pc: &PseudoCycle, trivial: &PseudoCycle, symbols: &[&FunctionSymbol]) -> Vec<PseudoCycle> {
    let mut out = Vec::new();
    for star in symbols {
        out.extend(first_instance_pseudo_cycles(pc, star));
        out.extend(product(pc, pc, star, 0));
        if pc.len() == trivial.len() {
            out.extend((0..pc.len()).filter_map(|d| product(pc, trivial, star, d)));
        }
    }
    out
}

/// Lazy breadth-first stream of the elements of unitary pseudo-cycles of `c`.
///
/// Besides first-instance steps, a pseudo-cycle may be combined with itself
/// element-wise and with the trivial pseudo-cycle; this reaches terms such
/// as `(ā*ā)*(b̄*b̄)` whose factors repeat an element. Elements are yielded
/// once up to `≈{α,C}`, level by level, and each satisfies `κ·t ≈ t`.
pub struct UnitaryStream {
    trivial: PseudoCycle,
    symbols: Vec<FunctionSymbol>,
    max_depth: usize,
    queue: VecDeque<PseudoCycle>,
    seen: BTreeSet<Vec<Term>>,
}

impl Iterator for UnitaryStream {
    type Item = Term;

    fn next(&mut self) -> Option<Term> {
        while let Some(pc) = self.queue.pop_front() {
            if pc.level < self.max_depth {
                let symbols: Vec<&FunctionSymbol> = self.symbols.iter().collect();
                for child in children(&pc, &self.trivial, &symbols) {
                    if self.seen.insert(child.key()) {
                        self.queue.push_back(child);
                    }
                }
            }
            if pc.is_unitary() {
                return Some(pc.elements[0].clone());
            }
        }
        None
    }
}

/// Elements of unitary pseudo-cycles of `c` up to `max_depth` nesting levels.
/// Empty when `signature` has no commutative symbol, or when `|c|` is not a
/// power of two.
pub fn enumerate_unitary_pseudo_cycles(
    c: &Cycle,
    signature: &[FunctionSymbol],
    max_depth: usize,
) -> UnitaryStream {
    let trivial = trivial_pseudo_cycle(c);
    let symbols: Vec<FunctionSymbol> = signature.iter().filter(|f| f.is_commutative()).cloned().collect();
    let mut seen = BTreeSet::new();
    seen.insert(trivial.key());
    UnitaryStream {
        queue: [trivial.clone()].into_iter().collect(),
        trivial,
        symbols,
        max_depth,
        seen,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nominal::Atom;

    fn star() -> FunctionSymbol {
        FunctionSymbol::commutative("*")
    }

    fn at(s: &str) -> Term {
        Term::atom(s)
    }

    #[test]
    fn trivial_is_atoms_in_order() {
        let c = Cycle::from_names(&["a", "b", "c", "d"]).unwrap();
        let pc = trivial_pseudo_cycle(&c);
        assert_eq!(pc.elements(), &[at("a"), at("b"), at("c"), at("d")]);
        assert!(pc.satisfies_definition());
    }

    #[test]
    fn first_instance_of_four_cycle() {
        let c = Cycle::from_names(&["a", "b", "c", "d"]).unwrap();
        let kids = first_instance_pseudo_cycles(&trivial_pseudo_cycle(&c), &star());
        let lens: Vec<usize> = kids.iter().map(PseudoCycle::len).collect();
        assert_eq!(lens, vec![4, 2]);
        let s = star();
        assert_eq!(
            kids[0].elements(),
            &[
                Term::comm(&s, at("a"), at("b")),
                Term::comm(&s, at("b"), at("c")),
                Term::comm(&s, at("c"), at("d")),
                Term::comm(&s, at("d"), at("a")),
            ]
        );
    }

    #[test]
    fn transposition_gives_unitary_product() {
        let c = Cycle::from_names(&["a", "b"]).unwrap();
        let kids = first_instance_pseudo_cycles(&trivial_pseudo_cycle(&c), &star());
        assert_eq!(kids.len(), 1);
        assert!(kids[0].is_unitary());
    }

    #[test]
    fn unitary_stream_for_transposition() {
        let c = Cycle::from_names(&["a", "b"]).unwrap();
        let got: Vec<Term> = enumerate_unitary_pseudo_cycles(&c, &[star()], 3).collect();
        let s = star();
        let ab = Term::comm(&s, at("a"), at("b"));
        assert_eq!(got[0], ab);
        let aa_bb = Term::comm(&s, Term::comm(&s, at("a"), at("a")), Term::comm(&s, at("b"), at("b")));
        let ab_ab = Term::comm(&s, ab.clone(), ab);
        for want in [aa_bb, ab_ab] {
            assert!(got.iter().any(|t| canonical_c(t) == canonical_c(&want)), "{want}");
        }
        let pi = c.to_permutation();
        for t in &got {
            assert!(alpha_c_equiv(&FreshnessContext::new(), &t.permute(&pi), t));
        }
    }

    #[test]
    fn three_cycle_has_no_unitary() {
        let c = Cycle::new(vec![Atom::new("a"), Atom::new("b"), Atom::new("c")]).unwrap();
        assert_eq!(enumerate_unitary_pseudo_cycles(&c, &[star()], 3).count(), 0);
    }

    #[test]
    fn one_cycle_is_unitary() {
        let c = Cycle::from_names(&["a"]).unwrap();
        let first = enumerate_unitary_pseudo_cycles(&c, &[star()], 0).next();
        assert_eq!(first, Some(at("a")));
    }

    #[test]
    fn canonical_sorts_commutative_arguments() {
        let s = star();
        assert_eq!(
            canonical_c(&Term::comm(&s, at("b"), at("a"))),
            Term::comm(&s, at("a"), at("b"))
        );
    }
}
