use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::hash::{Hash, Hasher};

use indexmap::IndexSet;

use crate::nominal::{Atom, FunctionSymbol, Permutation, Substitution, Term, Variable};
use crate::relations::FreshnessContext;

/// `s ≈? t` or `a #? t`.
///
/// Equations are symmetric: `s ≈? t` and `t ≈? s` are the same constraint.
/// The orientation given at construction is kept for display.
#[derive(Clone, Debug)]
pub enum Constraint {
    Equation(Term, Term),
    Freshness(Atom, Term),
}

impl Constraint {
    pub fn eq(s: Term, t: Term) -> Self {
        Constraint::Equation(s, t)
    }

    pub fn fresh(a: Atom, t: Term) -> Self {
        Constraint::Freshness(a, t)
    }

    pub fn is_equation(&self) -> bool {
        matches!(self, Constraint::Equation(..))
    }

    /// `π.X ≈? X` (in either orientation) with a non-empty swapping list.
    pub fn as_fixpoint(&self) -> Option<(&Permutation, &Variable)> {
        match self {
            Constraint::Equation(s, t) => fixpoint_parts(s, t).or_else(|| fixpoint_parts(t, s)),
            Constraint::Freshness(..) => None,
        }
    }

    pub fn is_fixpoint(&self) -> bool {
        self.as_fixpoint().is_some()
    }

    pub fn vars(&self) -> BTreeSet<Variable> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    pub fn collect_vars(&self, out: &mut BTreeSet<Variable>) {
        match self {
            Constraint::Equation(s, t) => {
                s.collect_vars(out);
                t.collect_vars(out);
            }
            Constraint::Freshness(_, t) => t.collect_vars(out),
        }
    }

    pub fn apply(&self, sigma: &Substitution) -> Constraint {
        match self {
            Constraint::Equation(s, t) => Constraint::Equation(sigma.apply(s), sigma.apply(t)),
            Constraint::Freshness(a, t) => Constraint::Freshness(a.clone(), sigma.apply(t)),
        }
    }

    pub fn terms(&self) -> Vec<&Term> {
        match self {
            Constraint::Equation(s, t) => vec![s, t],
            Constraint::Freshness(_, t) => vec![t],
        }
    }

    fn key(&self) -> (u8, Option<&Atom>, &Term, Option<&Term>) {
        match self {
            Constraint::Equation(s, t) => {
                let (lo, hi) = if s <= t { (s, t) } else { (t, s) };
                (0, None, lo, Some(hi))
            }
            Constraint::Freshness(a, t) => (1, Some(a), t, None),
        }
    }
}

fn fixpoint_parts<'a>(s: &'a Term, t: &'a Term) -> Option<(&'a Permutation, &'a Variable)> {
    let (p, x) = s.as_susp()?;
    let y = t.as_bare_var()?;
    (x == y && !p.is_nil()).then_some((p, x))
}

impl PartialEq for Constraint {
    fn eq(&self, other: &Self) -> bool {
        self.key() == other.key()
    }
}

impl Eq for Constraint {}

impl Hash for Constraint {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.key().hash(state)
    }
}

impl PartialOrd for Constraint {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Constraint {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

/// A finite set of constraints that remembers insertion order, so that rule
/// selection is deterministic.
#[derive(Clone, Debug, Default)]
pub struct Problem {
    constraints: IndexSet<Constraint>,
}

impl PartialEq for Problem {
    /// Set equality; insertion order is ignored.
    fn eq(&self, other: &Self) -> bool {
        self.constraints.len() == other.constraints.len()
            && self.constraints.iter().all(|c| other.constraints.contains(c))
    }
}

impl Eq for Problem {}

impl Problem {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, c: Constraint) -> bool {
        self.constraints.insert(c)
    }

    pub fn remove(&mut self, c: &Constraint) -> bool {
        self.constraints.shift_remove(c)
    }

    pub fn contains(&self, c: &Constraint) -> bool {
        self.constraints.contains(c)
    }

    pub fn len(&self) -> usize {
        self.constraints.len()
    }

    pub fn is_empty(&self) -> bool {
        self.constraints.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Constraint> {
        self.constraints.iter()
    }

    /// `P≈`.
    pub fn equations(&self) -> impl Iterator<Item = &Constraint> {
        self.constraints.iter().filter(|c| c.is_equation())
    }

    /// `P#`.
    pub fn freshness(&self) -> impl Iterator<Item = &Constraint> {
        self.constraints.iter().filter(|c| !c.is_equation())
    }

    /// `Pfp≈`.
    pub fn fixpoints(&self) -> impl Iterator<Item = &Constraint> {
        self.constraints.iter().filter(|c| c.is_fixpoint())
    }

    /// `Pnfp≈`.
    pub fn non_fixpoints(&self) -> impl Iterator<Item = &Constraint> {
        self.constraints
            .iter()
            .filter(|c| c.is_equation() && !c.is_fixpoint())
    }

    /// `Var(P)`.
    pub fn vars(&self) -> BTreeSet<Variable> {
        let mut out = BTreeSet::new();
        for c in &self.constraints {
            c.collect_vars(&mut out);
        }
        out
    }

    /// `Var(P≈)`.
    pub fn equation_vars(&self) -> BTreeSet<Variable> {
        let mut out = BTreeSet::new();
        for c in self.equations() {
            c.collect_vars(&mut out);
        }
        out
    }

    pub fn atoms(&self) -> BTreeSet<Atom> {
        let mut out = BTreeSet::new();
        for c in &self.constraints {
            if let Constraint::Freshness(a, _) = c {
                out.insert(a.clone());
            }
            for t in c.terms() {
                t.collect_atoms(&mut out);
            }
        }
        out
    }

    pub fn symbols(&self) -> BTreeSet<FunctionSymbol> {
        let mut out = BTreeSet::new();
        for c in &self.constraints {
            for t in c.terms() {
                t.collect_symbols(&mut out);
            }
        }
        out
    }

    pub fn apply(&self, sigma: &Substitution) -> Problem {
        self.constraints.iter().map(|c| c.apply(sigma)).collect()
    }

    /// First commutative application to a non-pair, if any.
    pub fn ill_formed_application(&self) -> Option<&Term> {
        self.constraints
            .iter()
            .flat_map(|c| c.terms())
            .find_map(|t| t.ill_formed_application())
    }

    /// `Σ |s| + |t|` over equations.
    pub fn equation_size(&self) -> usize {
        self.constraints
            .iter()
            .map(|c| match c {
                Constraint::Equation(s, t) => s.size() + t.size(),
                Constraint::Freshness(..) => 0,
            })
            .sum()
    }

    /// `‖P#‖ = Σ |u|` over freshness constraints `a #? u`.
    pub fn freshness_size(&self) -> usize {
        self.constraints
            .iter()
            .map(|c| match c {
                Constraint::Freshness(_, u) => u.size(),
                Constraint::Equation(..) => 0,
            })
            .sum()
    }

    /// `‖P‖`: equation sizes plus freshness sizes.
    pub fn total_size(&self) -> usize {
        self.equation_size() + self.freshness_size()
    }
}

impl FromIterator<Constraint> for Problem {
    fn from_iter<I: IntoIterator<Item = Constraint>>(iter: I) -> Self {
        Problem {
            constraints: iter.into_iter().collect(),
        }
    }
}

impl Extend<Constraint> for Problem {
    fn extend<I: IntoIterator<Item = Constraint>>(&mut self, iter: I) {
        self.constraints.extend(iter)
    }
}

/// `⟨∇, σ, P⟩`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triple {
    pub ctx: FreshnessContext,
    pub subst: Substitution,
    pub problem: Problem,
}

impl Triple {
    pub fn new(ctx: FreshnessContext, subst: Substitution, problem: Problem) -> Self {
        Triple {
            ctx,
            subst,
            problem,
        }
    }

    /// The triple `⟨∇, id, P⟩` associated with a problem.
    pub fn root(ctx: FreshnessContext, problem: Problem) -> Self {
        Triple::new(ctx, Substitution::identity(), problem)
    }

    /// `im(σ) ∩ dom(σ) = ∅` and `dom(σ) ∩ Var(P) = ∅`.
    pub fn is_valid(&self) -> bool {
        let dom = self.subst.domain();
        self.subst.image_vars().is_disjoint(&dom) && self.problem.vars().is_disjoint(&dom)
    }

    /// Only fixpoint equations left.
    pub fn is_successful(&self) -> bool {
        self.problem.iter().all(Constraint::is_fixpoint)
    }
}

/// Lexicographic termination measure `⟨|Var(P≈)|, size, |Pnfp≈|⟩`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Measure {
    pub equation_vars: usize,
    pub size: usize,
    pub non_fixpoints: usize,
}

impl Measure {
    /// With `size = ‖P‖`, equations and freshness constraints both counted.
    pub fn with_total_size(p: &Problem) -> Measure {
        Measure {
            equation_vars: p.equation_vars().len(),
            size: p.total_size(),
            non_fixpoints: p.non_fixpoints().count(),
        }
    }

    /// With `size` counting equations only. This is the variant that decreases
    /// along `(≈?[ab])`, which trades an abstraction pair for a new freshness
    /// constraint as large as one of its bodies.
    pub fn with_equation_size(p: &Problem) -> Measure {
        Measure {
            equation_vars: p.equation_vars().len(),
            size: p.equation_size(),
            non_fixpoints: p.non_fixpoints().count(),
        }
    }
}
