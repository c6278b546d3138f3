use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use super::{Atom, Permutation, Variable};

/// Equational theory attached to a function symbol.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Theory {
    Plain,
    Commutative,
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FunctionSymbol {
    name: Arc<str>,
    theory: Theory,
}

impl FunctionSymbol {
    pub fn new(name: impl AsRef<str>, theory: Theory) -> Self {
        FunctionSymbol {
            name: Arc::from(name.as_ref()),
            theory,
        }
    }

    pub fn plain(name: impl AsRef<str>) -> Self {
        Self::new(name, Theory::Plain)
    }

    pub fn commutative(name: impl AsRef<str>) -> Self {
        Self::new(name, Theory::Commutative)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn theory(&self) -> Theory {
        self.theory
    }

    pub fn is_commutative(&self) -> bool {
        self.theory == Theory::Commutative
    }
}

impl fmt::Debug for FunctionSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.theory {
            Theory::Plain => write!(f, "{}", self.name),
            Theory::Commutative => write!(f, "{}^C", self.name),
        }
    }
}

/// Nominal terms.
///
/// `Susp(π, X)` is the suspension `π.X`; `id.X` is just the variable `X`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Unit,
    Atom(Atom),
    Abs(Atom, Box<Term>),
    Pair(Box<Term>, Box<Term>),
    App(FunctionSymbol, Box<Term>),
    Susp(Permutation, Variable),
}

impl Term {
    pub fn atom(name: &str) -> Term {
        Term::Atom(Atom::new(name))
    }

    pub fn var(name: &str) -> Term {
        Term::Susp(Permutation::identity(), Variable::new(name))
    }

    pub fn susp(p: Permutation, x: Variable) -> Term {
        Term::Susp(p, x)
    }

    pub fn abs(a: Atom, body: Term) -> Term {
        Term::Abs(a, Box::new(body))
    }

    pub fn pair(l: Term, r: Term) -> Term {
        Term::Pair(Box::new(l), Box::new(r))
    }

    pub fn app(f: FunctionSymbol, arg: Term) -> Term {
        Term::App(f, Box::new(arg))
    }

    /// `l * r` for a commutative symbol: `*⟨l, r⟩`.
    pub fn comm(f: &FunctionSymbol, l: Term, r: Term) -> Term {
        Term::app(f.clone(), Term::pair(l, r))
    }

    pub fn is_pair(&self) -> bool {
        matches!(self, Term::Pair(..))
    }

    /// The variable of an `id.X` term.
    pub fn as_bare_var(&self) -> Option<&Variable> {
        match self {
            Term::Susp(p, x) if p.is_nil() => Some(x),
            _ => None,
        }
    }

    pub fn as_susp(&self) -> Option<(&Permutation, &Variable)> {
        match self {
            Term::Susp(p, x) => Some((p, x)),
            _ => None,
        }
    }

    /// `π·t`.
    pub fn permute(&self, p: &Permutation) -> Term {
        if p.is_nil() {
            return self.clone();
        }
        match self {
            Term::Unit => Term::Unit,
            Term::Atom(a) => Term::Atom(p.apply_atom(a)),
            Term::Abs(a, t) => Term::abs(p.apply_atom(a), t.permute(p)),
            Term::Pair(l, r) => Term::pair(l.permute(p), r.permute(p)),
            Term::App(f, t) => Term::app(f.clone(), t.permute(p)),
            Term::Susp(q, x) => Term::Susp(q.append(p), x.clone()),
        }
    }

    /// Applies a function to every atom occurrence, binders included.
    /// Suspensions are left untouched.
    pub fn map_atoms(&self, f: &impl Fn(&Atom) -> Atom) -> Term {
        match self {
            Term::Unit => Term::Unit,
            Term::Atom(a) => Term::Atom(f(a)),
            Term::Abs(a, t) => Term::abs(f(a), t.map_atoms(f)),
            Term::Pair(l, r) => Term::pair(l.map_atoms(f), r.map_atoms(f)),
            Term::App(g, t) => Term::app(g.clone(), t.map_atoms(f)),
            Term::Susp(..) => self.clone(),
        }
    }

    /// Number of symbols. Suspensions count as one symbol whatever their
    /// permutation, so `π·t` has the same size as `t`.
    pub fn size(&self) -> usize {
        match self {
            Term::Unit | Term::Atom(_) | Term::Susp(..) => 1,
            Term::Abs(_, t) | Term::App(_, t) => 1 + t.size(),
            Term::Pair(l, r) => 1 + l.size() + r.size(),
        }
    }

    /// Height: leaves have depth 1, and a symbol applied to a pair is one
    /// level above its two arguments, so `(a*b)*c` has depth 3.
    pub fn depth(&self) -> usize {
        match self {
            Term::Unit | Term::Atom(_) | Term::Susp(..) => 1,
            Term::App(_, t) if t.is_pair() => t.depth(),
            Term::Abs(_, t) | Term::App(_, t) => 1 + t.depth(),
            Term::Pair(l, r) => 1 + l.depth().max(r.depth()),
        }
    }

    pub fn vars(&self) -> BTreeSet<Variable> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    pub fn collect_vars(&self, out: &mut BTreeSet<Variable>) {
        match self {
            Term::Unit | Term::Atom(_) => {}
            Term::Abs(_, t) | Term::App(_, t) => t.collect_vars(out),
            Term::Pair(l, r) => {
                l.collect_vars(out);
                r.collect_vars(out);
            }
            Term::Susp(_, x) => {
                out.insert(x.clone());
            }
        }
    }

    pub fn contains_var(&self, x: &Variable) -> bool {
        match self {
            Term::Unit | Term::Atom(_) => false,
            Term::Abs(_, t) | Term::App(_, t) => t.contains_var(x),
            Term::Pair(l, r) => l.contains_var(x) || r.contains_var(x),
            Term::Susp(_, y) => x == y,
        }
    }

    pub fn is_ground(&self) -> bool {
        match self {
            Term::Unit | Term::Atom(_) => true,
            Term::Abs(_, t) | Term::App(_, t) => t.is_ground(),
            Term::Pair(l, r) => l.is_ground() && r.is_ground(),
            Term::Susp(..) => false,
        }
    }

    /// Every atom occurring in the term: atom terms, binders and suspension
    /// permutations.
    pub fn atoms(&self) -> BTreeSet<Atom> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    pub fn collect_atoms(&self, out: &mut BTreeSet<Atom>) {
        match self {
            Term::Unit => {}
            Term::Atom(a) => {
                out.insert(a.clone());
            }
            Term::Abs(a, t) => {
                out.insert(a.clone());
                t.collect_atoms(out);
            }
            Term::App(_, t) => t.collect_atoms(out),
            Term::Pair(l, r) => {
                l.collect_atoms(out);
                r.collect_atoms(out);
            }
            Term::Susp(p, _) => out.extend(p.mentioned_atoms()),
        }
    }

    pub fn collect_symbols(&self, out: &mut BTreeSet<FunctionSymbol>) {
        match self {
            Term::Unit | Term::Atom(_) | Term::Susp(..) => {}
            Term::Abs(_, t) => t.collect_symbols(out),
            Term::App(f, t) => {
                out.insert(f.clone());
                t.collect_symbols(out);
            }
            Term::Pair(l, r) => {
                l.collect_symbols(out);
                r.collect_symbols(out);
            }
        }
    }

    /// First application of a commutative symbol whose argument is not a pair.
    pub fn ill_formed_application(&self) -> Option<&Term> {
        match self {
            Term::Unit | Term::Atom(_) | Term::Susp(..) => None,
            Term::Abs(_, t) => t.ill_formed_application(),
            Term::Pair(l, r) => l.ill_formed_application().or_else(|| r.ill_formed_application()),
            Term::App(f, t) => {
                if f.is_commutative() && !t.is_pair() {
                    Some(self)
                } else {
                    t.ill_formed_application()
                }
            }
        }
    }

    pub fn is_well_formed(&self) -> bool {
        self.ill_formed_application().is_none()
    }
}

/// `Var(S)` for a collection of terms.
pub fn vars_of_all<'a>(terms: impl IntoIterator<Item = &'a Term>) -> BTreeSet<Variable> {
    let mut out = BTreeSet::new();
    for t in terms {
        t.collect_vars(&mut out);
    }
    out
}
