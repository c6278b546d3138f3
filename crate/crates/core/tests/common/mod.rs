#![allow(dead_code)]

use std::collections::BTreeSet;

use nomcu_core::nominal::{Atom, FunctionSymbol, Permutation, Substitution, Swapping, Term, Variable};
use nomcu_core::oracle::TermSpace;
use nomcu_core::relations::{check_fresh, FreshnessContext};
use nomcu_core::unifier::{Constraint, Problem};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const ATOMS: [&str; 4] = ["a", "b", "c", "d"];
pub const VARS: [&str; 2] = ["X", "Y"];

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn star() -> FunctionSymbol {
    FunctionSymbol::commutative("*")
}

pub fn plus() -> FunctionSymbol {
    FunctionSymbol::commutative("+")
}

pub fn f() -> FunctionSymbol {
    FunctionSymbol::plain("f")
}

pub fn signature() -> Vec<FunctionSymbol> {
    vec![star(), plus(), f()]
}

pub fn atoms() -> Vec<Atom> {
    ATOMS.iter().map(Atom::new).collect()
}

fn pick_atom(rng: &mut impl Rng) -> Atom {
    Atom::new(ATOMS.choose(rng).unwrap())
}

pub fn random_perm(rng: &mut impl Rng, max_swaps: usize) -> Permutation {
    let n = rng.gen_range(0..=max_swaps);
    let mut swaps = Vec::new();
    while swaps.len() < n {
        if let Some(s) = Swapping::new(pick_atom(rng), pick_atom(rng)) {
            swaps.push(s);
        }
    }
    Permutation::from_swaps(swaps)
}

/// A well-formed term of depth at most `depth`; `vars` may be empty.
pub fn random_term(rng: &mut impl Rng, depth: usize, vars: &[&str]) -> Term {
    let leaf = depth <= 1 || rng.gen_bool(0.3);
    if leaf {
        let choice = rng.gen_range(0..if vars.is_empty() { 4 } else { 7 });
        return match choice {
            0 => Term::Unit,
            1..=3 => Term::Atom(pick_atom(rng)),
            _ => Term::susp(random_perm(rng, 2), Variable::new(vars.choose(rng).unwrap())),
        };
    }
    match rng.gen_range(0..5) {
        0 => Term::abs(pick_atom(rng), random_term(rng, depth - 1, vars)),
        1 => Term::app(f(), random_term(rng, depth - 1, vars)),
        2 => Term::pair(random_term(rng, depth - 1, vars), random_term(rng, depth - 1, vars)),
        3 => Term::comm(&star(), random_term(rng, depth - 1, vars), random_term(rng, depth - 1, vars)),
        _ => Term::comm(&plus(), random_term(rng, depth - 1, vars), random_term(rng, depth - 1, vars)),
    }
}

/// Rewrites `t` into a `≈{α,C}`-equivalent term under `ctx`: commutative
/// arguments are flipped and binders renamed at random.
pub fn perturb(rng: &mut impl Rng, ctx: &FreshnessContext, t: &Term) -> Term {
    match t {
        Term::Unit | Term::Atom(_) | Term::Susp(..) => t.clone(),
        Term::Abs(a, body) => {
            let body = perturb(rng, ctx, body);
            let b = pick_atom(rng);
            if b != *a && check_fresh(ctx, &b, &body) && rng.gen_bool(0.5) {
                Term::abs(b.clone(), body.permute(&Permutation::swap(a.clone(), b)))
            } else {
                Term::abs(a.clone(), body)
            }
        }
        Term::Pair(l, r) => Term::pair(perturb(rng, ctx, l), perturb(rng, ctx, r)),
        Term::App(g, arg) => match &**arg {
            Term::Pair(l, r) if g.is_commutative() => {
                let (l, r) = (perturb(rng, ctx, l), perturb(rng, ctx, r));
                if rng.gen_bool(0.5) {
                    Term::comm(g, r, l)
                } else {
                    Term::comm(g, l, r)
                }
            }
            _ => Term::app(g.clone(), perturb(rng, ctx, arg)),
        },
    }
}

/// Changes one leaf of `t`; the result is usually not equivalent to `t`.
pub fn mutate(rng: &mut impl Rng, t: &Term, vars: &[&str]) -> Term {
    match t {
        Term::Unit | Term::Atom(_) | Term::Susp(..) => random_term(rng, 1, vars),
        Term::Abs(a, body) => Term::abs(a.clone(), mutate(rng, body, vars)),
        Term::Pair(l, r) if rng.gen_bool(0.5) => Term::pair(mutate(rng, l, vars), (**r).clone()),
        Term::Pair(l, r) => Term::pair((**l).clone(), mutate(rng, r, vars)),
        Term::App(g, arg) => Term::app(g.clone(), mutate(rng, arg, vars)),
    }
}

pub fn random_context(rng: &mut impl Rng, vars: &[&str], max: usize) -> FreshnessContext {
    let n = rng.gen_range(0..=max);
    (0..n)
        .filter(|_| !vars.is_empty())
        .map(|_| (pick_atom(rng), Variable::new(vars.choose(rng).unwrap())))
        .collect()
}

#[derive(Clone, Debug)]
pub struct Instance {
    pub ctx: FreshnessContext,
    pub problem: Problem,
    /// A ground solution used to build the instance, when there is one.
    pub planted: Option<Substitution>,
}

fn random_ground_binding(rng: &mut impl Rng, vars: &BTreeSet<Variable>, depth: usize) -> Substitution {
    vars.iter()
        .map(|x| (x.clone(), random_term(rng, depth, &[])))
        .collect()
}

/// Problems over at most 2 variables, 4 atoms, `*` and `+` commutative and
/// `f` plain, all terms of depth at most 3. About half are built around a
/// planted ground solution.
pub fn random_instance(rng: &mut impl Rng) -> Instance {
    let nvars = rng.gen_range(1..=2);
    let vars = &VARS[..nvars];
    loop {
        let mut problem = Problem::new();
        let mut planted = None;
        let neq = rng.gen_range(1..=2);
        if rng.gen_bool(0.5) {
            let lhs: Vec<Term> = (0..neq).map(|_| random_term(rng, 3, vars)).collect();
            let all_vars = nomcu_core::nominal::vars_of_all(lhs.iter());
            let sigma = random_ground_binding(rng, &all_vars, 2);
            let empty = FreshnessContext::new();
            for l in &lhs {
                let r = perturb(rng, &empty, &sigma.apply(l));
                if rng.gen_bool(0.5) {
                    problem.insert(Constraint::eq(l.clone(), r));
                } else {
                    problem.insert(Constraint::eq(r, l.clone()));
                }
            }
            if rng.gen_bool(0.3) {
                let t = random_term(rng, 2, vars);
                let a = pick_atom(rng);
                if check_fresh(&empty, &a, &sigma.apply(&t)) {
                    problem.insert(Constraint::fresh(a, t));
                }
            }
            planted = Some(sigma);
        } else {
            for _ in 0..neq {
                let l = random_term(rng, 3, vars);
                let r = if rng.gen_bool(0.5) {
                    let m = mutate(rng, &l, vars);
                    perturb(rng, &FreshnessContext::new(), &m)
                } else {
                    random_term(rng, 3, vars)
                };
                problem.insert(Constraint::eq(l, r));
            }
            if rng.gen_bool(0.2) {
                problem.insert(Constraint::fresh(pick_atom(rng), random_term(rng, 2, vars)));
            }
        }
        let depth_ok = problem.iter().all(|c| c.terms().iter().all(|t| t.depth() <= 3));
        if !depth_ok || problem.vars().is_empty() {
            continue;
        }
        let mut ctx = random_context(rng, vars, 2);
        if let Some(sigma) = &planted {
            let empty = FreshnessContext::new();
            ctx = ctx
                .iter()
                .filter(|(a, x)| check_fresh(&empty, a, &sigma.lookup(x)))
                .cloned()
                .collect();
        }
        return Instance { ctx, problem, planted };
    }
}

pub fn corpus(seed: u64, n: usize) -> Vec<Instance> {
    let mut r = rng(seed);
    (0..n).map(|_| random_instance(&mut r)).collect()
}

/// The ground space for the oracle: the instance's atoms (at least one) and
/// symbols, depth 3.
pub fn oracle_space(inst: &Instance) -> TermSpace {
    let mut atoms: BTreeSet<Atom> = inst.problem.atoms();
    atoms.extend(inst.ctx.domain());
    if atoms.is_empty() {
        atoms.insert(Atom::new("a"));
    }
    TermSpace::ground(atoms.into_iter().collect(), inst.problem.symbols().into_iter().collect(), 3)
}

/// Rebuilds every suspension's permutation as a canonical product of its
/// cycles, so that terms compare equal exactly when the actions agree.
pub fn normalize_perms(t: &Term) -> Term {
    match t {
        Term::Unit | Term::Atom(_) => t.clone(),
        Term::Susp(p, x) => Term::Susp(canonical_perm(p), x.clone()),
        Term::Abs(a, b) => Term::abs(a.clone(), normalize_perms(b)),
        Term::Pair(l, r) => Term::pair(normalize_perms(l), normalize_perms(r)),
        Term::App(g, arg) => Term::app(g.clone(), normalize_perms(arg)),
    }
}

pub fn canonical_perm(p: &Permutation) -> Permutation {
    let mut cycles: Vec<Vec<Atom>> = nomcu_core::fixpoint::cycle_decompose(p)
        .into_iter()
        .map(|c| {
            let atoms = c.atoms().to_vec();
            let min = atoms.iter().enumerate().min_by_key(|(_, a)| (*a).clone()).unwrap().0;
            atoms[min..].iter().chain(&atoms[..min]).cloned().collect()
        })
        .collect();
    cycles.sort();
    let swaps = cycles
        .into_iter()
        .flat_map(|c| {
            let first = c[0].clone();
            c.into_iter()
                .skip(1)
                .map(move |a| Swapping::new(first.clone(), a).unwrap())
        })
        .collect();
    Permutation::from_swaps(swaps)
}

pub fn normalize_problem(p: &Problem) -> BTreeSet<Constraint> {
    p.iter()
        .map(|c| match c {
            Constraint::Equation(s, t) => Constraint::eq(normalize_perms(s), normalize_perms(t)),
            Constraint::Freshness(a, t) => Constraint::fresh(a.clone(), normalize_perms(t)),
        })
        .collect()
}

pub fn normalize_subst(s: &Substitution) -> Substitution {
    s.iter().map(|(x, t)| (x.clone(), normalize_perms(t))).collect()
}
