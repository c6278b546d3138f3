//! Checking candidate solutions of a triple, and comparing solutions by
//! generality.
//!
//! The existential substitution `λ` in both definitions is found by nominal
//! C-matching: the more general side is the pattern, the instance side is
//! the target with its variables held rigid. Matching proposes finitely
//! many candidates, one per choice of argument order at commutative
//! symbols, and each candidate is verified with the equivalence judgement.

use std::collections::BTreeSet;

use crate::nominal::{Permutation, Substitution, Term, Variable};
use crate::relations::{alpha_c_equiv, check_fresh, FreshnessContext};

use super::problem::{Constraint, Triple};

/// `⟨∇, σ⟩`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Solution {
    pub ctx: FreshnessContext,
    pub subst: Substitution,
}

impl Solution {
    pub fn new(ctx: FreshnessContext, subst: Substitution) -> Self {
        Solution { ctx, subst }
    }
}

/// Outcome of a check involving an existential witness.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Fails,
    /// The branch budget ran out before a witness was found.
    UnknownAtBound,
}

impl Verdict {
    pub fn holds(self) -> bool {
        self == Verdict::Holds
    }
}

/// Budget for the witness search: the number of matching branches explored.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WitnessBound {
    pub max_branches: usize,
}

impl Default for WitnessBound {
    fn default() -> Self {
        WitnessBound { max_branches: 1 << 14 }
    }
}

/// Conditions 1 to 3: `∇ ⊢ Δσ`, freshness constraints and equations of the
/// triple hold under `σ` in `∇`.
pub fn check_conditions(t: &Triple, sol: &Solution) -> bool {
    let ctx = &sol.ctx;
    let sigma = &sol.subst;
    t.ctx
        .iter()
        .all(|(a, x)| check_fresh(ctx, a, &sigma.lookup(x)))
        && t.problem.iter().all(|c| match c {
            Constraint::Freshness(a, u) => check_fresh(ctx, a, &sigma.apply(u)),
            Constraint::Equation(l, r) => alpha_c_equiv(ctx, &sigma.apply(l), &sigma.apply(r)),
        })
}

/// All four conditions; condition 4 asks for `λ` with `∇ ⊢ δλ ≈ σ`, where `δ`
/// is the triple's substitution.
pub fn check_solution(t: &Triple, sol: &Solution) -> bool {
    check_solution_verdict(t, sol, WitnessBound::default()).holds()
}

pub fn check_solution_verdict(t: &Triple, sol: &Solution, bound: WitnessBound) -> Verdict {
    if !check_conditions(t, sol) {
        return Verdict::Fails;
    }
    let mut vars = t.subst.domain();
    vars.extend(t.subst.image_vars());
    vars.extend(sol.subst.domain());
    instance_witness(&t.subst, &sol.subst, &sol.ctx, &vars, None, bound)
}

/// `s1 ≼ s2` on `vars`: some `λ` has `∇2 ⊢ σ1λ ≈ σ2` on `vars` and `∇2 ⊢ ∇1λ`.
pub fn solution_leq(s1: &Solution, s2: &Solution, vars: &BTreeSet<Variable>) -> bool {
    solution_leq_verdict(s1, s2, vars, WitnessBound::default()).holds()
}

pub fn solution_leq_verdict(
    s1: &Solution,
    s2: &Solution,
    vars: &BTreeSet<Variable>,
    bound: WitnessBound,
) -> Verdict {
    instance_witness(&s1.subst, &s2.subst, &s2.ctx, vars, Some(&s1.ctx), bound)
}

/// Searches `λ` with `ctx ⊢ X general λ ≈ X instance` for every `X` in
/// `vars`, and `ctx ⊢ a # Yλ` for each `a#Y` in `general_ctx`.
fn instance_witness(
    general: &Substitution,
    instance: &Substitution,
    ctx: &FreshnessContext,
    vars: &BTreeSet<Variable>,
    general_ctx: Option<&FreshnessContext>,
    bound: WitnessBound,
) -> Verdict {
    let goals: Vec<(Term, Term)> = vars
        .iter()
        .map(|x| (general.lookup(x), instance.lookup(x)))
        .collect();
    let mut budget = bound.max_branches;
    let mut accept = |lambda: &Substitution| {
        let eq = goals
            .iter()
            .all(|(p, t)| alpha_c_equiv(ctx, &lambda.apply(p), t));
        // a variable the pattern never fixes can be sent to `<>`, which is
        // fresh for every atom
        let fresh = general_ctx.is_none_or(|g| {
            g.iter().all(|(a, y)| match lambda.get(y) {
                Some(img) => check_fresh(ctx, a, img),
                None => !pattern_mentions(&goals, y) || ctx.contains(a, y),
            })
        });
        eq && fresh
    };
    let start = Matching {
        goals: goals.clone(),
        lambda: Substitution::identity(),
        bound: BTreeSet::new(),
    };
    match start.run(&mut budget, &mut accept) {
        Search::Found => Verdict::Holds,
        Search::Exhausted => Verdict::Fails,
        Search::OutOfBudget => Verdict::UnknownAtBound,
    }
}

fn pattern_mentions(pairs: &[(Term, Term)], y: &Variable) -> bool {
    pairs.iter().any(|(p, _)| p.contains_var(y))
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Search {
    Found,
    Exhausted,
    OutOfBudget,
}

#[derive(Clone)]
struct Matching {
    goals: Vec<(Term, Term)>,
    lambda: Substitution,
    /// Pattern variables already given an image (possibly themselves).
    bound: BTreeSet<Variable>,
}

impl Matching {
    /// Depth-first enumeration of candidates; each complete one is passed to
    /// `accept`.
    fn run(mut self, budget: &mut usize, accept: &mut dyn FnMut(&Substitution) -> bool) -> Search {
        while let Some((p, t)) = self.goals.pop() {
            match (p, t) {
                (Term::Susp(pi, y), t) => {
                    // later occurrences are left to verification
                    if self.bound.insert(y.clone()) {
                        self.lambda.bind(y, t.permute(&pi.inverse()));
                    }
                }
                (Term::Unit, Term::Unit) => {}
                (Term::Atom(a), Term::Atom(b)) if a == b => {}
                (Term::Abs(a, s), Term::Abs(b, u)) => {
                    if a == b {
                        self.goals.push((*s, *u));
                    } else {
                        self.goals.push((*s, u.permute(&Permutation::swap(a, b))));
                    }
                }
                (Term::Pair(s0, s1), Term::Pair(t0, t1)) => {
                    self.goals.push((*s1, *t1));
                    self.goals.push((*s0, *t0));
                }
                (Term::App(f, s), Term::App(g, u)) if f == g => match (*s, *u) {
                    (Term::Pair(s0, s1), Term::Pair(t0, t1)) if f.is_commutative() => {
                        if *budget == 0 {
                            return Search::OutOfBudget;
                        }
                        *budget -= 1;
                        let mut aligned = self.clone();
                        aligned.goals.push(((*s1).clone(), (*t1).clone()));
                        aligned.goals.push(((*s0).clone(), (*t0).clone()));
                        let first = aligned.run(budget, accept);
                        if first == Search::Found {
                            return first;
                        }
                        self.goals.push((*s1, *t0));
                        self.goals.push((*s0, *t1));
                        let second = self.run(budget, accept);
                        return if first == Search::OutOfBudget && second == Search::Exhausted {
                            first
                        } else {
                            second
                        };
                    }
                    (s, u) => self.goals.push((s, u)),
                },
                _ => return Search::Exhausted,
            }
        }
        if accept(&self.lambda) {
            Search::Found
        } else {
            Search::Exhausted
        }
    }
}
