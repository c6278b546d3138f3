use std::collections::BTreeSet;

use super::problem::Problem;
use crate::nominal::{Substitution, Term, Variable};
use crate::relations::FreshnessContext;

/// Rewrites commutative applications to a suspension `f^C π.X` into
/// `f^C ⟨π.X₁, π.X₂⟩` with new variables `X₁`, `X₂`.
///
/// `X` is replaced by `⟨X₁, X₂⟩` throughout the problem, and both new
/// variables inherit the freshness constraints of `X`. New names follow
/// `X_1`, `X_2`, skipping names already in use.
pub fn translate_commutative_suspensions(
    ctx: &FreshnessContext,
    p: &Problem,
) -> (FreshnessContext, Problem) {
    let mut ctx = ctx.clone();
    let mut p = p.clone();
    let mut taken: BTreeSet<Variable> = p.vars();
    taken.extend(ctx.variables());
    while let Some(x) = first_offending(&p) {
        let x1 = fresh_name(&x, &mut taken);
        let x2 = fresh_name(&x, &mut taken);
        let split = Substitution::singleton(
            x.clone(),
            Term::pair(Term::var(x1.name()), Term::var(x2.name())),
        );
        p = p.apply(&split);
        let inherited: Vec<_> = ctx.restriction(&x).into_iter().collect();
        for a in inherited {
            ctx.insert(a.clone(), x1.clone());
            ctx.insert(a, x2.clone());
        }
    }
    (ctx, p)
}

fn first_offending(p: &Problem) -> Option<Variable> {
    p.iter().flat_map(|c| c.terms()).find_map(|t| match t.ill_formed_application() {
        Some(Term::App(_, arg)) => arg.as_susp().map(|(_, x)| x.clone()),
        _ => None,
    })
}

fn fresh_name(x: &Variable, taken: &mut BTreeSet<Variable>) -> Variable {
    (1..)
        .map(|i| Variable::new(format!("{}_{i}", x.name())))
        .find(|v| taken.insert(v.clone()))
        .expect("unbounded name supply")
}
