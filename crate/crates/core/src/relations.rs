//! Freshness and equivalence judgements.
//!
//! `∇ ⊢ a # t`, `∇ ⊢ s ≈α t` and `∇ ⊢ s ≈{α,C} t` are decided by
//! syntax-directed recursion over the derivation rules. The only choice point
//! is the commutative rule, which tries the aligned argument pairing before
//! the crossed one.

use std::collections::BTreeSet;

use crate::nominal::{Atom, Term, Variable};

/// A set of constraints `a # X`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FreshnessContext {
    constraints: BTreeSet<(Atom, Variable)>,
}

impl FreshnessContext {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, a: Atom, x: Variable) -> bool {
        self.constraints.insert((a, x))
    }

    pub fn contains(&self, a: &Atom, x: &Variable) -> bool {
        // avoid cloning on the hot path
        self.constraints
            .range((a.clone(), x.clone())..=(a.clone(), x.clone()))
            .next()
            .is_some()
    }

    pub fn len(&self) -> usize {
        self.constraints.len()
    }

    pub fn is_empty(&self) -> bool {
        self.constraints.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &(Atom, Variable)> {
        self.constraints.iter()
    }

    pub fn union(&self, other: &FreshnessContext) -> FreshnessContext {
        let mut out = self.clone();
        out.constraints.extend(other.constraints.iter().cloned());
        out
    }

    pub fn extend(&mut self, items: impl IntoIterator<Item = (Atom, Variable)>) {
        self.constraints.extend(items);
    }

    /// `∇|_X`: the atoms constrained fresh for `x`.
    pub fn restriction(&self, x: &Variable) -> BTreeSet<Atom> {
        self.constraints
            .iter()
            .filter(|(_, y)| y == x)
            .map(|(a, _)| a.clone())
            .collect()
    }

    /// `dom(∇)`: atoms appearing in the context.
    pub fn domain(&self) -> BTreeSet<Atom> {
        self.constraints.iter().map(|(a, _)| a.clone()).collect()
    }

    pub fn variables(&self) -> BTreeSet<Variable> {
        self.constraints.iter().map(|(_, x)| x.clone()).collect()
    }

    pub fn is_subset(&self, other: &FreshnessContext) -> bool {
        self.constraints.is_subset(&other.constraints)
    }
}

impl FromIterator<(Atom, Variable)> for FreshnessContext {
    fn from_iter<I: IntoIterator<Item = (Atom, Variable)>>(iter: I) -> Self {
        FreshnessContext {
            constraints: iter.into_iter().collect(),
        }
    }
}

/// Rule applied at a node of a freshness derivation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FreshRule {
    Unit,
    Atom,
    App,
    AbsSame,
    AbsOther,
    Var,
    Pair,
}

/// `∇ ⊢ a # t`.
pub fn check_fresh(ctx: &FreshnessContext, a: &Atom, t: &Term) -> bool {
    fresh_rec(ctx, a, t, &mut |_, _| {})
}

/// Like [`check_fresh`], reporting every rule tried to `trace`, root first.
pub fn check_fresh_traced(
    ctx: &FreshnessContext,
    a: &Atom,
    t: &Term,
    trace: &mut dyn FnMut(FreshRule, &Term),
) -> bool {
    fresh_rec(ctx, a, t, trace)
}

fn fresh_rec(
    ctx: &FreshnessContext,
    a: &Atom,
    t: &Term,
    trace: &mut dyn FnMut(FreshRule, &Term),
) -> bool {
    match t {
        Term::Unit => {
            trace(FreshRule::Unit, t);
            true
        }
        Term::Atom(b) => {
            // no rule for a # a
            if a == b {
                return false;
            }
            trace(FreshRule::Atom, t);
            true
        }
        Term::App(_, arg) => {
            trace(FreshRule::App, t);
            fresh_rec(ctx, a, arg, trace)
        }
        Term::Abs(b, body) => {
            if a == b {
                trace(FreshRule::AbsSame, t);
                true
            } else {
                trace(FreshRule::AbsOther, t);
                fresh_rec(ctx, a, body, trace)
            }
        }
        Term::Pair(l, r) => {
            trace(FreshRule::Pair, t);
            fresh_rec(ctx, a, l, trace) && fresh_rec(ctx, a, r, trace)
        }
        Term::Susp(p, x) => {
            trace(FreshRule::Var, t);
            ctx.contains(&p.inverse().apply_atom(a), x)
        }
    }
}

/// `∇ ⊢ s ≈{α,C} t`.
pub fn alpha_c_equiv(ctx: &FreshnessContext, s: &Term, t: &Term) -> bool {
    equiv(ctx, s, t, true)
}

/// `∇ ⊢ s ≈α t`: every function symbol is treated as free.
pub fn alpha_equiv(ctx: &FreshnessContext, s: &Term, t: &Term) -> bool {
    equiv(ctx, s, t, false)
}

fn equiv(ctx: &FreshnessContext, s: &Term, t: &Term, modulo_c: bool) -> bool {
    match (s, t) {
        (Term::Unit, Term::Unit) => true,
        (Term::Atom(a), Term::Atom(b)) => a == b,
        (Term::Abs(a, s1), Term::Abs(b, t1)) => {
            if a == b {
                equiv(ctx, s1, t1, modulo_c)
            } else {
                let swapped = t1.permute(&crate::nominal::Permutation::swap(a.clone(), b.clone()));
                equiv(ctx, s1, &swapped, modulo_c) && check_fresh(ctx, a, t1)
            }
        }
        (Term::Pair(s0, s1), Term::Pair(t0, t1)) => {
            equiv(ctx, s0, t0, modulo_c) && equiv(ctx, s1, t1, modulo_c)
        }
        (Term::App(f, sa), Term::App(g, ta)) => {
            if f != g {
                return false;
            }
            match (modulo_c && f.is_commutative(), &**sa, &**ta) {
                (true, Term::Pair(s0, s1), Term::Pair(t0, t1)) => {
                    (equiv(ctx, s0, t0, modulo_c) && equiv(ctx, s1, t1, modulo_c))
                        || (equiv(ctx, s0, t1, modulo_c) && equiv(ctx, s1, t0, modulo_c))
                }
                _ => equiv(ctx, sa, ta, modulo_c),
            }
        }
        (Term::Susp(p, x), Term::Susp(q, y)) => {
            x == y && p.difference_set(q).iter().all(|a| ctx.contains(a, x))
        }
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nominal::{FunctionSymbol, Permutation, Substitution};

    fn at(s: &str) -> Atom {
        Atom::new(s)
    }

    fn x() -> Variable {
        Variable::new("X")
    }

    #[test]
    fn fresh_in_unit() {
        assert!(check_fresh(&FreshnessContext::new(), &at("a"), &Term::Unit));
    }

    #[test]
    fn atom_not_fresh_in_itself() {
        assert!(!check_fresh(&FreshnessContext::new(), &at("a"), &Term::atom("a")));
        assert!(check_fresh(&FreshnessContext::new(), &at("a"), &Term::atom("b")));
    }

    #[test]
    fn fresh_var_uses_inverse_image() {
        let ctx: FreshnessContext = [(at("c"), x())].into_iter().collect();
        let t = Term::susp(Permutation::from_pairs([("a", "c")]), x());
        assert!(check_fresh(&ctx, &at("a"), &t));
        assert!(!check_fresh(&ctx, &at("c"), &t));
    }

    #[test]
    fn fresh_trace_records_rules() {
        let t = Term::abs(at("b"), Term::pair(Term::Unit, Term::atom("c")));
        let mut rules = Vec::new();
        assert!(check_fresh_traced(&FreshnessContext::new(), &at("a"), &t, &mut |r, _| rules.push(r)));
        assert_eq!(
            rules,
            vec![FreshRule::AbsOther, FreshRule::Pair, FreshRule::Unit, FreshRule::Atom]
        );
    }

    #[test]
    fn commutative_crossed_branch() {
        let f = FunctionSymbol::commutative("f");
        let s = Term::comm(&f, Term::atom("a"), Term::atom("b"));
        let t = Term::comm(&f, Term::atom("b"), Term::atom("a"));
        let ctx = FreshnessContext::new();
        assert!(alpha_c_equiv(&ctx, &s, &t));
        assert!(!alpha_equiv(&ctx, &s, &t));
    }

    #[test]
    fn suspension_equivalence_by_difference_set() {
        let t = Term::susp(Permutation::from_pairs([("a", "b")]), x());
        let ctx: FreshnessContext = [(at("a"), x()), (at("b"), x())].into_iter().collect();
        assert!(alpha_c_equiv(&ctx, &t, &Term::var("X")));
        let partial: FreshnessContext = [(at("a"), x())].into_iter().collect();
        assert!(!alpha_c_equiv(&partial, &t, &Term::var("X")));
    }

    #[test]
    fn substituted_pair_example() {
        // σ = {X/[a]a}: ⟨(a b).X, f e⟩σ ≈ ⟨X, f e⟩σ
        let sigma = Substitution::singleton(x(), Term::abs(at("a"), Term::atom("a")));
        let fe = Term::app(FunctionSymbol::plain("f"), Term::atom("e"));
        let lhs = Term::pair(Term::susp(Permutation::from_pairs([("a", "b")]), x()), fe.clone());
        let rhs = Term::pair(Term::var("X"), fe);
        assert!(alpha_c_equiv(&FreshnessContext::new(), &sigma.apply(&lhs), &sigma.apply(&rhs)));
    }

    #[test]
    fn alpha_renaming_of_binders() {
        let s = Term::abs(at("a"), Term::atom("a"));
        let t = Term::abs(at("b"), Term::atom("b"));
        assert!(alpha_equiv(&FreshnessContext::new(), &s, &t));
        let u = Term::abs(at("b"), Term::atom("a"));
        assert!(!alpha_equiv(&FreshnessContext::new(), &s, &u));
    }

    #[test]
    fn commutative_symbol_on_non_pairs_uses_app_rule() {
        let f = FunctionSymbol::commutative("f");
        let s = Term::app(f.clone(), Term::atom("a"));
        assert!(alpha_c_equiv(&FreshnessContext::new(), &s, &s.clone()));
        let t = Term::comm(&f, Term::atom("a"), Term::atom("a"));
        assert!(!alpha_c_equiv(&FreshnessContext::new(), &s, &t));
    }
}
