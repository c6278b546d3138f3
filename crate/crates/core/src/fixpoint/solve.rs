use std::collections::BTreeSet;

use super::cycle::{cycle_decompose, Cycle};
use super::pseudo::{canonical_c, enumerate_unitary_pseudo_cycles};
use crate::error::Error;
use crate::nominal::{Atom, FunctionSymbol, Permutation, Substitution, Term, Variable};
use crate::relations::{alpha_c_equiv, check_fresh, FreshnessContext};
use crate::unifier::{check_solution, Solution, Triple};

/// Bounds on the enumeration of combinatory solutions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    /// Nesting levels of pseudo-cycle products.
    pub max_depth: usize,
    /// Solutions emitted per equation and per leaf.
    pub max_count: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            max_depth: 3,
            max_count: 64,
        }
    }
}

/// `⟨∇ ∪ dom(π)#X, id⟩`.
pub fn trivial_solution(ctx: &FreshnessContext, p: &Permutation, x: &Variable) -> Solution {
    let mut ctx = ctx.clone();
    ctx.extend(p.domain().into_iter().map(|a| (a, x.clone())));
    Solution::new(ctx, Substitution::identity())
}

/// A cycle of `p` can contribute combinatory solutions for `x` only if none
/// of its atoms is required fresh for `x`.
pub fn admissible_cycles(ctx: &FreshnessContext, p: &Permutation, x: &Variable) -> Vec<Cycle> {
    let banned = ctx.restriction(x);
    cycle_decompose(p)
        .into_iter()
        .filter(|c| c.atoms().iter().all(|a| !banned.contains(a)))
        .collect()
}

/// One combinatory binding for `x`, with the context it needs.
#[derive(Clone, Debug)]
struct Candidate {
    term: Term,
    fresh: Vec<Atom>,
}

fn combinatory_candidates(
    ctx: &FreshnessContext,
    p: &Permutation,
    x: &Variable,
    signature: &[FunctionSymbol],
    bounds: Bounds,
) -> Vec<Candidate> {
    let cycles = cycle_decompose(p);
    let mut out = Vec::new();
    for c in admissible_cycles(ctx, p, x) {
        // the other cycles' atoms stay fresh for x
        let fresh: Vec<Atom> = cycles
            .iter()
            .filter(|d| **d != c)
            .flat_map(|d| d.atoms().iter().cloned())
            .collect();
        for t in enumerate_unitary_pseudo_cycles(&c, signature, bounds.max_depth) {
            if out.len() >= bounds.max_count {
                return out;
            }
            out.push(Candidate {
                term: t,
                fresh: fresh.clone(),
            });
        }
    }
    out
}

/// Solutions of `π.X ≈? X` under `ctx`: the trivial solution first, then up
/// to `max_count` combinatory ones `⟨ctx ∪ A#X, {X/t}⟩`, where `t` is the
/// element of a unitary pseudo-cycle of an admissible cycle `κ` of `π` and
/// `A` holds the atoms of the other cycles.
pub fn solve_fixpoint_equation(
    ctx: &FreshnessContext,
    p: &Permutation,
    x: &Variable,
    signature: &[FunctionSymbol],
    bounds: Bounds,
) -> Vec<Solution> {
    let mut out = vec![trivial_solution(ctx, p, x)];
    for cand in combinatory_candidates(ctx, p, x, signature, bounds) {
        let mut c = ctx.clone();
        c.extend(cand.fresh.into_iter().map(|a| (a, x.clone())));
        out.push(Solution::new(c, Substitution::singleton(x.clone(), cand.term)));
    }
    out
}

/// Fixpoint equations of a leaf grouped by variable, in order of appearance.
pub fn fixpoints_by_variable(leaf: &Triple) -> Vec<(Variable, Vec<Permutation>)> {
    let mut out: Vec<(Variable, Vec<Permutation>)> = Vec::new();
    for c in leaf.problem.fixpoints() {
        let (p, x) = c.as_fixpoint().expect("fixpoint");
        match out.iter_mut().find(|(y, _)| y == x) {
            Some((_, ps)) => ps.push(p.clone()),
            None => out.push((x.clone(), vec![p.clone()])),
        }
    }
    out
}

enum Choice {
    Trivial(Vec<Atom>),
    Bind(Candidate),
}

/// Solutions of a successful leaf, combining per-variable choices.
///
/// For each variable the choices are the trivial one (all moved atoms fresh)
/// and every combinatory term that solves all of that variable's equations
/// and respects the leaf's freshness constraints. Choices are combined as a
/// Cartesian product, trivial first, and composed after the leaf's
/// substitution. At most `max_count` solutions are returned; each is checked
/// against the leaf.
pub fn combine_leaf_solutions(
    leaf: &Triple,
    signature: &[FunctionSymbol],
    bounds: Bounds,
) -> Result<Vec<Solution>, Error> {
    let groups = fixpoints_by_variable(leaf);
    let empty = FreshnessContext::new();
    let mut per_var: Vec<(Variable, Vec<Choice>)> = Vec::new();
    for (x, perms) in &groups {
        let mut moved: Vec<Atom> = Vec::new();
        for p in perms {
            for a in p.domain() {
                if !moved.contains(&a) {
                    moved.push(a);
                }
            }
        }
        let mut choices = vec![Choice::Trivial(moved)];
        let mut seen = BTreeSet::new();
        for p in perms {
            for cand in combinatory_candidates(&leaf.ctx, p, x, signature, bounds) {
                let solves_all = perms
                    .iter()
                    .all(|q| alpha_c_equiv(&empty, &cand.term.permute(q), &cand.term));
                let respects_ctx = leaf
                    .ctx
                    .restriction(x)
                    .iter()
                    .all(|a| check_fresh(&empty, a, &cand.term));
                if solves_all && respects_ctx && seen.insert(canonical_c(&cand.term)) {
                    choices.push(Choice::Bind(cand));
                }
            }
        }
        per_var.push((x.clone(), choices));
    }

    let mut out = Vec::new();
    let mut index = vec![0usize; per_var.len()];
    loop {
        if out.len() >= bounds.max_count.max(1) {
            break;
        }
        let mut ctx = leaf.ctx.clone();
        let mut lambda = Substitution::identity();
        for ((x, choices), &i) in per_var.iter().zip(&index) {
            match &choices[i] {
                Choice::Trivial(atoms) => ctx.extend(atoms.iter().map(|a| (a.clone(), x.clone()))),
                Choice::Bind(c) => {
                    ctx.extend(c.fresh.iter().map(|a| (a.clone(), x.clone())));
                    lambda.bind(x.clone(), c.term.clone());
                }
            }
        }
        let sol = Solution::new(ctx, leaf.subst.compose(&lambda));
        if !check_solution(leaf, &sol) {
            return Err(Error::InvariantViolation(format!(
                "combined solution {sol} does not solve its leaf {leaf}"
            )));
        }
        out.push(sol);
        // odometer over the choices, last variable fastest
        let mut pos = per_var.len();
        loop {
            if pos == 0 {
                return Ok(out);
            }
            pos -= 1;
            index[pos] += 1;
            if index[pos] < per_var[pos].1.len() {
                break;
            }
            index[pos] = 0;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::unifier::{Constraint, Problem};

    fn x() -> Variable {
        Variable::new("X")
    }

    fn star() -> FunctionSymbol {
        FunctionSymbol::commutative("*")
    }

    fn fixpoint(p: &[(&str, &str)], v: &str) -> Constraint {
        Constraint::eq(
            Term::susp(Permutation::from_pairs(p.iter().copied()), Variable::new(v)),
            Term::var(v),
        )
    }

    #[test]
    fn transposition_solutions() {
        let p = Permutation::from_pairs([("a", "b")]);
        let sols = solve_fixpoint_equation(&FreshnessContext::new(), &p, &x(), &[star()], Bounds::default());
        assert_eq!(sols[0].ctx.len(), 2);
        assert!(sols[0].subst.is_identity());
        assert_eq!(
            sols[1].subst.get(&x()),
            Some(&Term::comm(&star(), Term::atom("a"), Term::atom("b")))
        );
    }

    #[test]
    fn three_cycle_only_trivial() {
        let p = Permutation::from_pairs([("a", "b"), ("a", "c")]);
        let sols = solve_fixpoint_equation(&FreshnessContext::new(), &p, &x(), &[star()], Bounds::default());
        assert_eq!(sols.len(), 1);
        assert_eq!(sols[0].ctx.len(), 3);
    }

    #[test]
    fn freshness_blocks_a_cycle() {
        let p = Permutation::from_pairs([("a", "b"), ("e", "f"), ("c", "d"), ("a", "c")]);
        let ctx: FreshnessContext = [(Atom::new("e"), x())].into_iter().collect();
        let cycles = admissible_cycles(&ctx, &p, &x());
        assert_eq!(cycles, vec![Cycle::from_names(&["a", "b", "c", "d"]).unwrap()]);
        let sols = solve_fixpoint_equation(&ctx, &p, &x(), &[star()], Bounds::default());
        for s in &sols[1..] {
            assert!(s.ctx.contains(&Atom::new("f"), &x()));
        }
    }

    #[test]
    fn empty_leaf_gives_its_own_solution() {
        let leaf = Triple::root(FreshnessContext::new(), Problem::new());
        let sols = combine_leaf_solutions(&leaf, &[star()], Bounds::default()).unwrap();
        assert_eq!(sols, vec![Solution::default()]);
    }

    #[test]
    fn conjunction_filter_keeps_only_trivial() {
        let problem: Problem = [fixpoint(&[("a", "b")], "X"), fixpoint(&[("a", "c")], "X")]
            .into_iter()
            .collect();
        let leaf = Triple::root(FreshnessContext::new(), problem);
        let sols = combine_leaf_solutions(&leaf, &[star()], Bounds::default()).unwrap();
        assert_eq!(sols.len(), 1);
        assert_eq!(sols[0].ctx.len(), 3);
    }

    #[test]
    fn product_over_two_variables() {
        let problem: Problem = [fixpoint(&[("a", "b")], "X"), fixpoint(&[("c", "d")], "Y")]
            .into_iter()
            .collect();
        let leaf = Triple::root(FreshnessContext::new(), problem);
        let bounds = Bounds { max_depth: 1, max_count: 64 };
        let sols = combine_leaf_solutions(&leaf, &[star()], bounds).unwrap();
        // {trivial, a*b} × {trivial, c*d}
        assert_eq!(sols.len(), 4);
    }
}
