use std::collections::{BTreeMap, BTreeSet};

use super::{Term, Variable};

/// A finite substitution. Identity bindings `X/X` are never stored, so
/// `dom(σ)` is exactly the key set.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Substitution {
    bindings: BTreeMap<Variable, Term>,
}

impl Substitution {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn singleton(x: Variable, t: Term) -> Self {
        let mut s = Self::default();
        s.bind(x, t);
        s
    }

    /// Adds or replaces the binding for `x`; `X/X` removes it instead.
    pub fn bind(&mut self, x: Variable, t: Term) {
        if t.as_bare_var() == Some(&x) {
            self.bindings.remove(&x);
        } else {
            self.bindings.insert(x, t);
        }
    }

    pub fn get(&self, x: &Variable) -> Option<&Term> {
        self.bindings.get(x)
    }

    pub fn is_identity(&self) -> bool {
        self.bindings.is_empty()
    }

    pub fn len(&self) -> usize {
        self.bindings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bindings.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Variable, &Term)> {
        self.bindings.iter()
    }

    pub fn domain(&self) -> BTreeSet<Variable> {
        self.bindings.keys().cloned().collect()
    }

    /// Variables occurring in the images.
    pub fn image_vars(&self) -> BTreeSet<Variable> {
        super::vars_of_all(self.bindings.values())
    }

    /// `Xσ`.
    pub fn lookup(&self, x: &Variable) -> Term {
        self.bindings
            .get(x)
            .cloned()
            .unwrap_or_else(|| Term::Susp(Default::default(), x.clone()))
    }

    /// `tσ`; the suspension case is `(π.X)σ = π·(Xσ)`.
    pub fn apply(&self, t: &Term) -> Term {
        if self.bindings.is_empty() {
            return t.clone();
        }
        match t {
            Term::Unit | Term::Atom(_) => t.clone(),
            Term::Abs(a, body) => Term::abs(a.clone(), self.apply(body)),
            Term::Pair(l, r) => Term::pair(self.apply(l), self.apply(r)),
            Term::App(f, arg) => Term::app(f.clone(), self.apply(arg)),
            Term::Susp(p, x) => match self.bindings.get(x) {
                Some(img) => img.permute(p),
                None => t.clone(),
            },
        }
    }

    /// The substitution that first applies `self`, then `then`:
    /// `t(self.compose(then)) = (t self) then`.
    pub fn compose(&self, then: &Substitution) -> Substitution {
        let mut out = Substitution::default();
        for (x, t) in &self.bindings {
            out.bind(x.clone(), then.apply(t));
        }
        for (x, t) in &then.bindings {
            if !self.bindings.contains_key(x) {
                out.bind(x.clone(), t.clone());
            }
        }
        out
    }

    /// `im(σ) ∩ dom(σ) = ∅`.
    pub fn is_idempotent_shape(&self) -> bool {
        let dom = self.domain();
        self.image_vars().is_disjoint(&dom)
    }

    /// Keeps only the bindings for variables in `keep`.
    pub fn restrict(&self, keep: &BTreeSet<Variable>) -> Substitution {
        Substitution {
            bindings: self
                .bindings
                .iter()
                .filter(|(x, _)| keep.contains(*x))
                .map(|(x, t)| (x.clone(), t.clone()))
                .collect(),
        }
    }
}

impl FromIterator<(Variable, Term)> for Substitution {
    fn from_iter<I: IntoIterator<Item = (Variable, Term)>>(iter: I) -> Self {
        let mut s = Substitution::default();
        for (x, t) in iter {
            s.bind(x, t);
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nominal::{Atom, FunctionSymbol, Permutation};

    fn x() -> Variable {
        Variable::new("X")
    }

    #[test]
    fn identity_leaves_terms_alone() {
        let t = Term::pair(Term::var("X"), Term::atom("a"));
        assert_eq!(Substitution::identity().apply(&t), t);
    }

    #[test]
    fn suspension_case_permutes_the_image() {
        // {X/[a]a} applied to (a b).X gives [b]b
        let s = Substitution::singleton(x(), Term::abs(Atom::new("a"), Term::atom("a")));
        let t = Term::susp(Permutation::from_pairs([("a", "b")]), x());
        assert_eq!(s.apply(&t), Term::abs(Atom::new("b"), Term::atom("b")));
    }

    #[test]
    fn homomorphic_descent() {
        let s = Substitution::singleton(x(), Term::atom("a"));
        assert_eq!(
            s.apply(&Term::pair(Term::var("X"), Term::var("X"))),
            Term::pair(Term::atom("a"), Term::atom("a"))
        );
    }

    #[test]
    fn identity_bindings_are_dropped() {
        let s = Substitution::singleton(x(), Term::var("X"));
        assert!(s.is_identity());
    }

    #[test]
    fn compose_sequential() {
        let s1 = Substitution::singleton(x(), Term::var("Y"));
        let s2 = Substitution::singleton(Variable::new("Y"), Term::atom("a"));
        let c = s1.compose(&s2);
        assert_eq!(c.get(&x()), Some(&Term::atom("a")));
        assert_eq!(c.get(&Variable::new("Y")), Some(&Term::atom("a")));
        assert_eq!(Substitution::identity().compose(&s2), s2);
    }

    #[test]
    fn compose_with_inverse_permuted_binding() {
        // π.X ≈? (e f).Y with π = (a b) binds X to (e f)(a b).Y
        let pi = Permutation::from_pairs([("a", "b")]);
        let t = Term::susp(Permutation::from_pairs([("e", "f")]), Variable::new("Y"));
        let s = Substitution::singleton(x(), t.permute(&pi.inverse()))
            .compose(&Substitution::identity());
        assert_eq!(
            s.get(&x()),
            Some(&Term::susp(
                Permutation::from_pairs([("e", "f"), ("a", "b")]),
                Variable::new("Y")
            ))
        );
    }

    #[test]
    fn compose_agrees_with_sequential_application() {
        let f = FunctionSymbol::plain("f");
        let s1: Substitution = [(x(), Term::app(f, Term::var("Y")))].into_iter().collect();
        let s2: Substitution = [(Variable::new("Y"), Term::atom("c"))].into_iter().collect();
        let t = Term::pair(
            Term::susp(Permutation::from_pairs([("c", "d")]), x()),
            Term::var("Y"),
        );
        assert_eq!(s1.compose(&s2).apply(&t), s2.apply(&s1.apply(&t)));
    }
}
