//! Brute-force ground truth over a finite term space.
//!
//! Only the term syntax and the freshness and equivalence judgements are
//! used here, so results are independent of the simplification rules.

use std::collections::{BTreeSet, HashMap};

use crate::nominal::{Atom, FunctionSymbol, Permutation, Substitution, Swapping, Term, Variable};
use crate::relations::{alpha_c_equiv, check_fresh, FreshnessContext};
use crate::unifier::{Constraint, Problem, Solution};

/// Bounds of an enumeration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TermSpace {
    pub atoms: Vec<Atom>,
    pub signature: Vec<FunctionSymbol>,
    pub max_depth: usize,
    /// When non-empty, leaves also include `id.X` and `(a b).X`.
    pub variables: Vec<Variable>,
}

impl TermSpace {
    pub fn ground(atoms: Vec<Atom>, signature: Vec<FunctionSymbol>, max_depth: usize) -> Self {
        TermSpace {
            atoms,
            signature,
            max_depth,
            variables: Vec::new(),
        }
    }
}

/// Every well-formed term of depth at most `max_depth`, each once,
/// shallower terms first.
pub fn enumerate_terms(space: &TermSpace) -> Vec<Term> {
    // by_depth[d] holds the terms of depth exactly d + 1
    let mut by_depth: Vec<Vec<Term>> = Vec::new();
    if space.max_depth == 0 {
        return Vec::new();
    }
    let mut leaves = vec![Term::Unit];
    leaves.extend(space.atoms.iter().map(|a| Term::Atom(a.clone())));
    for x in &space.variables {
        leaves.push(Term::var(x.name()));
        for (i, a) in space.atoms.iter().enumerate() {
            for b in &space.atoms[i + 1..] {
                let s = Swapping::new(a.clone(), b.clone()).expect("distinct atoms");
                leaves.push(Term::Susp(Permutation::from_swaps(vec![s]), x.clone()));
            }
        }
    }
    by_depth.push(leaves);
    for d in 1..space.max_depth {
        let prev = &by_depth[d - 1];
        // pairs whose deeper component has depth exactly d
        let shallower: Vec<&Term> = by_depth[..d - 1].iter().flatten().collect();
        let mut pairs = Vec::new();
        for l in prev {
            for r in prev {
                pairs.push(Term::pair(l.clone(), r.clone()));
            }
            for r in &shallower {
                pairs.push(Term::pair(l.clone(), (*r).clone()));
                pairs.push(Term::pair((*r).clone(), l.clone()));
            }
        }
        let mut layer = Vec::new();
        for a in &space.atoms {
            layer.extend(prev.iter().map(|t| Term::abs(a.clone(), t.clone())));
        }
        for f in &space.signature {
            if !f.is_commutative() {
                layer.extend(prev.iter().filter(|t| !t.is_pair()).map(|t| Term::app(f.clone(), t.clone())));
            }
            layer.extend(pairs.iter().map(|p| Term::app(f.clone(), p.clone())));
        }
        layer.extend(pairs);
        by_depth.push(layer);
    }
    by_depth.into_iter().flatten().collect()
}

/// Key equal for two ground terms iff they are `≈{α,C}`: bound atoms become
/// binder indices and commutative arguments are sorted.
pub fn ground_key(t: &Term) -> String {
    fn go(t: &Term, binders: &mut Vec<Atom>) -> String {
        match t {
            Term::Unit => "<>".into(),
            Term::Atom(a) => match binders.iter().rev().position(|b| b == a) {
                Some(i) => format!("#{i}"),
                None => a.name().to_string(),
            },
            Term::Abs(a, body) => {
                binders.push(a.clone());
                let inner = go(body, binders);
                binders.pop();
                format!("[]{inner}")
            }
            Term::Pair(l, r) => format!("({},{})", go(l, binders), go(r, binders)),
            Term::App(f, arg) => match &**arg {
                Term::Pair(l, r) if f.is_commutative() => {
                    let mut parts = [go(l, binders), go(r, binders)];
                    parts.sort();
                    format!("{}^C({},{})", f.name(), parts[0], parts[1])
                }
                _ => format!("{} {}", f.name(), go(arg, binders)),
            },
            Term::Susp(p, x) => format!("{p:?}.{x}"),
        }
    }
    go(t, &mut Vec::new())
}

/// Ground substitutions over `Var(P)` and the variables of `ctx`, with values
/// in the enumerated space, that satisfy `∅ ⊢ ctx σ` and every constraint of
/// `p`.
pub fn brute_force_unify(ctx: &FreshnessContext, p: &Problem, space: &TermSpace) -> Vec<Solution> {
    brute_force_unify_limit(ctx, p, space, usize::MAX)
}

/// Like [`brute_force_unify`], stopping after `limit` solutions.
pub fn brute_force_unify_limit(
    ctx: &FreshnessContext,
    p: &Problem,
    space: &TermSpace,
    limit: usize,
) -> Vec<Solution> {
    let mut out = Vec::new();
    brute_force_visit(ctx, p, space, |sigma| {
        out.push(Solution::new(FreshnessContext::new(), sigma.clone()));
        out.len() < limit
    });
    out
}

/// Calls `visit` on every ground solution until it returns `false`.
/// Returns the number of solutions visited.
pub fn brute_force_visit(
    ctx: &FreshnessContext,
    p: &Problem,
    space: &TermSpace,
    mut visit: impl FnMut(&Substitution) -> bool,
) -> usize {
    let branches = split_constraints(p);
    if branches.is_empty() {
        return 0;
    }
    let ground = TermSpace {
        variables: Vec::new(),
        ..space.clone()
    };
    let terms = enumerate_terms(&ground);
    let mut index: HashMap<String, Vec<usize>> = HashMap::new();
    for (i, t) in terms.iter().enumerate() {
        index.entry(ground_key(t)).or_default().push(i);
    }
    let vars: Vec<Variable> = p
        .vars()
        .into_iter()
        .chain(ctx.variables())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let mut visited = 0;
    for (k, constraints) in branches.iter().enumerate() {
        let mut search = Search::new(ctx, &terms, &index, constraints, vars.clone());
        // a solution shared with an earlier branch was visited there
        let mut fresh_only = |sigma: &Substitution| {
            if branches[..k].iter().any(|b| b.iter().all(|c| Search::holds(c, sigma))) {
                return true;
            }
            assert!(
                p.iter().all(|c| Search::holds(c, sigma)),
                "oracle branch produced a non-solution"
            );
            visited += 1;
            visit(sigma)
        };
        search.assign(&mut Substitution::identity(), &mut fresh_only);
        if search.stop {
            break;
        }
    }
    visited
}

/// Splits equations along the defining clauses of `≈{α,C}`: pairs,
/// applications and abstractions are taken apart, and a commutative
/// application gives one branch per argument order. Each branch is a
/// conjunction; their union has the same ground solutions as `p`. Ground
/// constraints are decided on the way, and failed branches dropped.
fn split_constraints(p: &Problem) -> Vec<Vec<Constraint>> {
    let mut branches = Vec::new();
    split(p.iter().cloned().collect(), Vec::new(), &mut branches);
    branches
}

fn split(mut todo: Vec<Constraint>, mut out: Vec<Constraint>, branches: &mut Vec<Vec<Constraint>>) {
    let empty = FreshnessContext::new();
    while let Some(c) = todo.pop() {
        if c.vars().is_empty() {
            let ok = match &c {
                Constraint::Equation(s, t) => alpha_c_equiv(&empty, s, t),
                Constraint::Freshness(a, t) => check_fresh(&empty, a, t),
            };
            if !ok {
                return;
            }
            continue;
        }
        let Constraint::Equation(s, t) = &c else {
            out.push(c);
            continue;
        };
        match (s, t) {
            (Term::Pair(s1, s2), Term::Pair(t1, t2)) => {
                todo.push(Constraint::eq((**s1).clone(), (**t1).clone()));
                todo.push(Constraint::eq((**s2).clone(), (**t2).clone()));
            }
            (Term::App(f, s1), Term::App(g, t1)) if f == g && !f.is_commutative() => {
                todo.push(Constraint::eq((**s1).clone(), (**t1).clone()));
            }
            (Term::App(f, s1), Term::App(g, t1)) if f == g => match (&**s1, &**t1) {
                (Term::Pair(l1, r1), Term::Pair(l2, r2)) => {
                    let mut crossed = todo.clone();
                    crossed.push(Constraint::eq((**l1).clone(), (**r2).clone()));
                    crossed.push(Constraint::eq((**r1).clone(), (**l2).clone()));
                    todo.push(Constraint::eq((**l1).clone(), (**l2).clone()));
                    todo.push(Constraint::eq((**r1).clone(), (**r2).clone()));
                    split(crossed, out.clone(), branches);
                }
                _ => out.push(c.clone()),
            },
            (Term::Abs(a, s1), Term::Abs(b, t1)) if a == b => {
                todo.push(Constraint::eq((**s1).clone(), (**t1).clone()));
            }
            (Term::Abs(a, s1), Term::Abs(b, t1)) => {
                let swapped = t1.permute(&Permutation::swap(a.clone(), b.clone()));
                todo.push(Constraint::eq((**s1).clone(), swapped));
                todo.push(Constraint::fresh(a.clone(), (**t1).clone()));
            }
            // `X` strictly inside `t`: `tσ` is larger than `Xσ`
            (Term::Susp(_, x), u) | (u, Term::Susp(_, x)) if u.as_susp().is_none() && u.contains_var(x) => return,
            (Term::Susp(..), _) | (_, Term::Susp(..)) => out.push(c.clone()),
            // different shapes with a variable inside: never equal
            _ => return,
        }
    }
    branches.push(out);
}

struct Search<'a> {
    terms: &'a [Term],
    index: &'a HashMap<String, Vec<usize>>,
    constraints: &'a [Constraint],
    /// Values of each variable that pass its context and its one-variable
    /// constraints.
    domains: HashMap<Variable, Vec<usize>>,
    assigned: Vec<Variable>,
    unassigned: Vec<Variable>,
    visited: usize,
    stop: bool,
}

impl<'a> Search<'a> {
    fn new(
        ctx: &FreshnessContext,
        terms: &'a [Term],
        index: &'a HashMap<String, Vec<usize>>,
        constraints: &'a [Constraint],
        vars: Vec<Variable>,
    ) -> Self {
        let empty = FreshnessContext::new();
        let domains = vars
            .iter()
            .map(|x| {
                let fresh_needed = ctx.restriction(x);
                let unary: Vec<&Constraint> = constraints
                    .iter()
                    .filter(|c| c.vars().into_iter().eq([x.clone()]))
                    .collect();
                let dom = (0..terms.len())
                    .filter(|&k| {
                        let v = &terms[k];
                        fresh_needed.iter().all(|a| check_fresh(&empty, a, v)) && {
                            let sigma = Substitution::singleton(x.clone(), v.clone());
                            unary.iter().all(|c| Self::holds(c, &sigma))
                        }
                    })
                    .collect();
                (x.clone(), dom)
            })
            .collect();
        Search {
            terms,
            index,
            constraints,
            domains,
            assigned: Vec::new(),
            unassigned: vars,
            visited: 0,
            stop: false,
        }
    }

    fn ready(&self, c: &Constraint) -> bool {
        c.vars().iter().all(|v| self.assigned.contains(v))
    }

    fn holds(c: &Constraint, sigma: &Substitution) -> bool {
        let empty = FreshnessContext::new();
        match c {
            Constraint::Equation(s, t) => alpha_c_equiv(&empty, &sigma.apply(s), &sigma.apply(t)),
            Constraint::Freshness(a, t) => check_fresh(&empty, a, &sigma.apply(t)),
        }
    }

    /// Equations `π.X ≈? t` with `X` not in `t`.
    fn solved_forms(&self) -> impl Iterator<Item = (&Permutation, &Variable, &Term)> {
        self.constraints.iter().flat_map(|c| {
            let Constraint::Equation(s, t) = c else { return Vec::new() };
            [(s, t), (t, s)]
                .into_iter()
                .filter_map(|(side, other)| {
                    let (p, y) = side.as_susp()?;
                    (!other.contains_var(y)).then_some((p, y, other))
                })
                .collect()
        })
    }

    /// Values for `x` forced by an equation `π.X ≈? t` whose other side is
    /// already ground under `sigma`.
    fn forced(&self, x: &Variable, sigma: &Substitution) -> Option<Vec<usize>> {
        let (p, _, other) = self
            .solved_forms()
            .find(|(_, y, other)| *y == x && other.vars().iter().all(|v| self.assigned.contains(v)))?;
        let target = sigma.apply(other).permute(&p.inverse());
        Some(self.index.get(&ground_key(&target)).cloned().unwrap_or_default())
    }

    /// A forced variable if there is one, else the variable whose value
    /// forces the most others, smallest domain first.
    fn pick(&self, sigma: &Substitution) -> (usize, Option<Vec<usize>>) {
        for (i, x) in self.unassigned.iter().enumerate() {
            if let Some(c) = self.forced(x, sigma) {
                return (i, Some(c));
            }
        }
        let unlocks = |v: &Variable| {
            self.solved_forms()
                .filter(|(_, y, other)| {
                    *y != v
                        && self.unassigned.contains(y)
                        && other.vars().iter().all(|w| w == v || self.assigned.contains(w))
                })
                .count()
        };
        let best = (0..self.unassigned.len())
            .max_by_key(|&i| {
                let x = &self.unassigned[i];
                (unlocks(x), std::cmp::Reverse(self.domains[x].len()), std::cmp::Reverse(i))
            })
            .expect("a variable left");
        (best, None)
    }

    fn assign(&mut self, sigma: &mut Substitution, visit: &mut impl FnMut(&Substitution) -> bool) {
        if self.unassigned.is_empty() {
            self.visited += 1;
            self.stop = !visit(sigma);
            return;
        }
        let (i, forced) = self.pick(sigma);
        let x = self.unassigned.remove(i);
        let before: Vec<bool> = self.constraints.iter().map(|c| self.ready(c)).collect();
        self.assigned.push(x.clone());
        let newly: Vec<&Constraint> = self
            .constraints
            .iter()
            .zip(before)
            .filter(|(c, was)| !was && self.ready(c))
            .map(|(c, _)| c)
            .collect();
        let candidates: Vec<usize> = match forced {
            Some(f) => {
                let dom = &self.domains[&x];
                f.into_iter().filter(|k| dom.binary_search(k).is_ok()).collect()
            }
            None => self.domains[&x].clone(),
        };
        for k in candidates {
            sigma.bind(x.clone(), self.terms[k].clone());
            if newly.iter().all(|c| Self::holds(c, sigma)) {
                self.assign(sigma, visit);
            }
            if self.stop {
                break;
            }
        }
        self.assigned.pop();
        self.unassigned.insert(i, x);
    }
}

/// Whether `t` is one of the terms [`enumerate_terms`] yields for `space`.
pub fn in_space(t: &Term, space: &TermSpace) -> bool {
    fn go(t: &Term, space: &TermSpace) -> bool {
        match t {
            Term::Unit => true,
            Term::Atom(a) => space.atoms.contains(a),
            Term::Abs(a, b) => space.atoms.contains(a) && go(b, space),
            Term::Pair(l, r) => go(l, space) && go(r, space),
            Term::App(f, arg) => space.signature.contains(f) && go(arg, space),
            Term::Susp(p, x) => {
                space.variables.contains(x)
                    && p.swaps().len() <= 1
                    && p.mentioned_atoms().iter().all(|a| space.atoms.contains(a))
            }
        }
    }
    t.depth() <= space.max_depth && t.is_well_formed() && go(t, space)
}

/// The oracle's verdict on one ground substitution: every variable of `p`
/// and `ctx` is bound within the space, and `∅ ⊢ ctx σ` and `P σ` hold.
pub fn accepts(ctx: &FreshnessContext, p: &Problem, space: &TermSpace, sigma: &Substitution) -> bool {
    let empty = FreshnessContext::new();
    let vars: BTreeSet<Variable> = p.vars().into_iter().chain(ctx.variables()).collect();
    vars.iter().all(|x| sigma.get(x).is_some_and(|v| v.is_ground() && in_space(v, space)))
        && ctx.iter().all(|(a, x)| check_fresh(&empty, a, &sigma.lookup(x)))
        && p.iter().all(|c| Search::holds(c, sigma))
}

/// Entry point for problems without variables: the identity solves them iff
/// every constraint holds.
pub fn ground_problem_holds(p: &Problem) -> bool {
    let empty = FreshnessContext::new();
    p.iter().all(|c| match c {
        Constraint::Equation(s, t) => alpha_c_equiv(&empty, s, t),
        Constraint::Freshness(a, t) => check_fresh(&empty, a, t),
    })
}
