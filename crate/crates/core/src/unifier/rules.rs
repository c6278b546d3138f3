use std::fmt;

use serde::Serialize;

use super::problem::{Constraint, Triple};
use crate::nominal::{Atom, Permutation, Substitution, Term, Variable};

/// Label of a reduction rule.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Rule {
    EqRefl,
    EqPair,
    EqApp,
    EqC,
    EqAbsSame,
    EqAbsOther,
    EqInst,
    EqInv,
    FreshUnit,
    FreshAtom,
    FreshApp,
    FreshAbsSame,
    FreshAbsOther,
    FreshVar,
    FreshPair,
}

impl Rule {
    pub fn label(self) -> &'static str {
        match self {
            Rule::EqRefl => "=?refl",
            Rule::EqPair => "=?pair",
            Rule::EqApp => "=?app",
            Rule::EqC => "=?C",
            Rule::EqAbsSame => "=?[aa]",
            Rule::EqAbsOther => "=?[ab]",
            Rule::EqInst => "=?inst",
            Rule::EqInv => "=?inv",
            Rule::FreshUnit => "#?<>",
            Rule::FreshAtom => "#?ab",
            Rule::FreshApp => "#?app",
            Rule::FreshAbsSame => "#?a[a]",
            Rule::FreshAbsOther => "#?a[b]",
            Rule::FreshVar => "#?var",
            Rule::FreshPair => "#?pair",
        }
    }

    /// Belongs to the equational stage.
    pub fn is_equational(self) -> bool {
        matches!(
            self,
            Rule::EqRefl
                | Rule::EqPair
                | Rule::EqApp
                | Rule::EqC
                | Rule::EqAbsSame
                | Rule::EqAbsOther
                | Rule::EqInst
                | Rule::EqInv
        )
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

enum EqStep {
    Replace(Rule, Vec<Constraint>),
    Branch(Vec<Constraint>, Vec<Constraint>),
    Inst(Variable, Term),
}

fn eq_step(s: &Term, t: &Term) -> Option<EqStep> {
    if s == t {
        return Some(EqStep::Replace(Rule::EqRefl, vec![]));
    }
    if s.as_susp().is_some() || t.as_susp().is_some() {
        return var_step(s, t);
    }
    match (s, t) {
        (Term::Pair(s1, t1), Term::Pair(s2, t2)) => Some(EqStep::Replace(
            Rule::EqPair,
            vec![
                Constraint::eq((**s1).clone(), (**s2).clone()),
                Constraint::eq((**t1).clone(), (**t2).clone()),
            ],
        )),
        (Term::App(f, sa), Term::App(g, ta)) if f == g => match (&**sa, &**ta) {
            (Term::Pair(s0, s1), Term::Pair(t0, t1)) if f.is_commutative() => {
                let s = Term::Pair(s0.clone(), s1.clone());
                Some(EqStep::Branch(
                    vec![Constraint::eq(s.clone(), Term::Pair(t0.clone(), t1.clone()))],
                    vec![Constraint::eq(s, Term::Pair(t1.clone(), t0.clone()))],
                ))
            }
            _ => Some(EqStep::Replace(
                Rule::EqApp,
                vec![Constraint::eq((**sa).clone(), (**ta).clone())],
            )),
        },
        (Term::Abs(a, s1), Term::Abs(b, t1)) => {
            if a == b {
                Some(EqStep::Replace(
                    Rule::EqAbsSame,
                    vec![Constraint::eq((**s1).clone(), (**t1).clone())],
                ))
            } else {
                let swapped = t1.permute(&Permutation::swap(a.clone(), b.clone()));
                Some(EqStep::Replace(
                    Rule::EqAbsOther,
                    vec![
                        Constraint::eq((**s1).clone(), swapped),
                        Constraint::fresh(a.clone(), (**t1).clone()),
                    ],
                ))
            }
        }
        _ => None,
    }
}

fn var_step(s: &Term, t: &Term) -> Option<EqStep> {
    if let (Some((p, x)), Some((q, y))) = (s.as_susp(), t.as_susp()) {
        if x == y {
            // π.X ≈? X in either orientation is already a fixpoint equation;
            // re-orienting it would cycle
            if p.is_nil() || q.is_nil() {
                return None;
            }
            let merged = p.append(&q.inverse());
            return Some(EqStep::Replace(
                Rule::EqInv,
                vec![Constraint::eq(Term::Susp(merged, x.clone()), Term::var(x.name()))],
            ));
        }
    }
    for (side, other) in [(s, t), (t, s)] {
        if let Some((p, x)) = side.as_susp() {
            if !other.contains_var(x) {
                return Some(EqStep::Inst(x.clone(), other.permute(&p.inverse())));
            }
        }
    }
    None
}

/// Every triple reachable by one equational rule applied to the first
/// reducible equation, in insertion order. Empty iff `t` is a normal form.
/// `(≈?C)` yields two children, aligned first.
pub fn reduce_eq_step(t: &Triple) -> Vec<(Rule, Triple)> {
    for c in t.problem.iter() {
        let Constraint::Equation(s, u) = c else {
            continue;
        };
        let Some(step) = eq_step(s, u) else {
            continue;
        };
        return match step {
            EqStep::Replace(rule, new) => vec![(rule, replaced(t, c, new))],
            EqStep::Branch(aligned, crossed) => vec![
                (Rule::EqC, replaced(t, c, aligned)),
                (Rule::EqC, replaced(t, c, crossed)),
            ],
            EqStep::Inst(x, img) => vec![(Rule::EqInst, instantiate(t, c, x, img))],
        };
    }
    Vec::new()
}

fn replaced(t: &Triple, old: &Constraint, new: Vec<Constraint>) -> Triple {
    let mut problem = t.problem.clone();
    problem.remove(old);
    problem.extend(new);
    Triple::new(t.ctx.clone(), t.subst.clone(), problem)
}

fn instantiate(t: &Triple, old: &Constraint, x: Variable, img: Term) -> Triple {
    let binding = Substitution::singleton(x, img);
    let subst = t.subst.compose(&binding);
    let mut rest = t.problem.clone();
    rest.remove(old);
    let mut problem = rest.apply(&binding);
    for (a, y) in t.ctx.iter() {
        if let Some(img) = subst.get(y) {
            problem.insert(Constraint::fresh(a.clone(), img.clone()));
        }
    }
    Triple::new(t.ctx.clone(), subst, problem)
}

enum FreshStep {
    Drop(Rule),
    Replace(Rule, Vec<Constraint>),
    Assume(Atom, Variable),
}

fn fresh_step(a: &Atom, t: &Term) -> Option<FreshStep> {
    match t {
        Term::Unit => Some(FreshStep::Drop(Rule::FreshUnit)),
        Term::Atom(b) if a != b => Some(FreshStep::Drop(Rule::FreshAtom)),
        Term::Atom(_) => None,
        Term::App(_, arg) => Some(FreshStep::Replace(
            Rule::FreshApp,
            vec![Constraint::fresh(a.clone(), (**arg).clone())],
        )),
        Term::Abs(b, _) if a == b => Some(FreshStep::Drop(Rule::FreshAbsSame)),
        Term::Abs(_, body) => Some(FreshStep::Replace(
            Rule::FreshAbsOther,
            vec![Constraint::fresh(a.clone(), (**body).clone())],
        )),
        Term::Pair(l, r) => Some(FreshStep::Replace(
            Rule::FreshPair,
            vec![
                Constraint::fresh(a.clone(), (**l).clone()),
                Constraint::fresh(a.clone(), (**r).clone()),
            ],
        )),
        Term::Susp(p, x) => Some(FreshStep::Assume(p.inverse().apply_atom(a), x.clone())),
    }
}

/// One freshness rule applied to the first reducible freshness constraint.
/// `None` iff no freshness rule applies.
pub fn reduce_fresh_step(t: &Triple) -> Option<(Rule, Triple)> {
    for c in t.problem.iter() {
        let Constraint::Freshness(a, u) = c else {
            continue;
        };
        let Some(step) = fresh_step(a, u) else {
            continue;
        };
        return Some(match step {
            FreshStep::Drop(rule) => (rule, replaced(t, c, vec![])),
            FreshStep::Replace(rule, new) => (rule, replaced(t, c, new)),
            FreshStep::Assume(b, x) => {
                let mut next = replaced(t, c, vec![]);
                next.ctx.insert(b, x);
                (Rule::FreshVar, next)
            }
        });
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nominal::FunctionSymbol;
    use crate::relations::FreshnessContext;
    use crate::unifier::problem::Problem;

    fn single(c: Constraint) -> Triple {
        Triple::root(FreshnessContext::new(), [c].into_iter().collect())
    }

    #[test]
    fn refl_deletes() {
        let t = single(Constraint::eq(Term::atom("a"), Term::atom("a")));
        let out = reduce_eq_step(&t);
        assert_eq!(out.len(), 1);
        assert_eq!(out[0].0, Rule::EqRefl);
        assert!(out[0].1.problem.is_empty());
    }

    #[test]
    fn distinct_atoms_are_irreducible() {
        let t = single(Constraint::eq(Term::atom("a"), Term::atom("b")));
        assert!(reduce_eq_step(&t).is_empty());
    }

    #[test]
    fn commutative_rule_branches() {
        let f = FunctionSymbol::commutative("*");
        let t = single(Constraint::eq(
            Term::comm(&f, Term::atom("a"), Term::var("X")),
            Term::comm(&f, Term::atom("b"), Term::atom("c")),
        ));
        let out = reduce_eq_step(&t);
        assert_eq!(out.len(), 2);
        assert!(out.iter().all(|(r, _)| *r == Rule::EqC));
        let crossed: Problem = [Constraint::eq(
            Term::pair(Term::atom("a"), Term::var("X")),
            Term::pair(Term::atom("c"), Term::atom("b")),
        )]
        .into_iter()
        .collect();
        assert_eq!(out[1].1.problem, crossed);
    }

    #[test]
    fn abstraction_with_distinct_binders() {
        let t = single(Constraint::eq(
            Term::abs(Atom::new("a"), Term::var("X")),
            Term::abs(Atom::new("b"), Term::var("X")),
        ));
        let (rule, next) = reduce_eq_step(&t).remove(0);
        assert_eq!(rule, Rule::EqAbsOther);
        assert_eq!(next.problem.len(), 2);
        assert_eq!(next.problem.freshness().count(), 1);
    }

    #[test]
    fn inst_records_inverse_permuted_binding() {
        let pi = Permutation::from_pairs([("a", "b")]);
        let t = single(Constraint::eq(
            Term::susp(pi, Variable::new("X")),
            Term::susp(Permutation::from_pairs([("e", "f")]), Variable::new("Y")),
        ));
        let (rule, next) = reduce_eq_step(&t).remove(0);
        assert_eq!(rule, Rule::EqInst);
        assert!(next.problem.is_empty());
        assert_eq!(
            next.subst.get(&Variable::new("X")),
            Some(&Term::susp(
                Permutation::from_pairs([("e", "f"), ("a", "b")]),
                Variable::new("Y")
            ))
        );
    }

    #[test]
    fn inst_adds_inherited_freshness() {
        let ctx: FreshnessContext = [(Atom::new("c"), Variable::new("X"))].into_iter().collect();
        let problem: Problem = [Constraint::eq(Term::var("X"), Term::atom("c"))]
            .into_iter()
            .collect();
        let (_, next) = reduce_eq_step(&Triple::root(ctx, problem)).remove(0);
        let want: Problem = [Constraint::fresh(Atom::new("c"), Term::atom("c"))]
            .into_iter()
            .collect();
        assert_eq!(next.problem, want);
        assert!(reduce_fresh_step(&next).is_none());
    }

    #[test]
    fn occurs_check_blocks_inst() {
        let f = FunctionSymbol::plain("f");
        let t = single(Constraint::eq(Term::var("X"), Term::app(f, Term::var("X"))));
        assert!(reduce_eq_step(&t).is_empty());
    }

    #[test]
    fn inv_merges_permutations() {
        let t = single(Constraint::eq(
            Term::susp(Permutation::from_pairs([("a", "b")]), Variable::new("X")),
            Term::susp(Permutation::from_pairs([("c", "d")]), Variable::new("X")),
        ));
        let (rule, next) = reduce_eq_step(&t).remove(0);
        assert_eq!(rule, Rule::EqInv);
        let fp = next.problem.iter().next().unwrap();
        let (p, _) = fp.as_fixpoint().unwrap();
        assert_eq!(p, &Permutation::from_pairs([("a", "b"), ("c", "d")]));
        assert!(reduce_eq_step(&next).is_empty());
    }

    #[test]
    fn fresh_var_moves_inverse_image_into_context() {
        let t = single(Constraint::fresh(
            Atom::new("a"),
            Term::susp(Permutation::from_pairs([("a", "c")]), Variable::new("X")),
        ));
        let (rule, next) = reduce_fresh_step(&t).unwrap();
        assert_eq!(rule, Rule::FreshVar);
        assert!(next.ctx.contains(&Atom::new("c"), &Variable::new("X")));
        assert!(next.problem.is_empty());
    }

    #[test]
    fn fresh_in_own_atom_is_stuck() {
        let t = single(Constraint::fresh(Atom::new("a"), Term::atom("a")));
        assert!(reduce_fresh_step(&t).is_none());
        let u = single(Constraint::fresh(Atom::new("a"), Term::Unit));
        assert_eq!(reduce_fresh_step(&u).unwrap().0, Rule::FreshUnit);
    }
}
