use super::problem::{Measure, Problem, Triple};
use super::rules::{reduce_eq_step, reduce_fresh_step, Rule};
use crate::error::Error;
use crate::relations::FreshnessContext;

pub type NodeId = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LeafKind {
    Successful,
    Fail,
}

/// Why a leaf failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FailReason {
    /// An equation other than a fixpoint equation survived `⇒≈`.
    NonFixpointEquation,
    /// A constraint `a #? a` survived `⇒#`.
    StuckFreshness,
}

#[derive(Clone, Debug)]
pub struct Node {
    pub id: NodeId,
    pub triple: Triple,
    pub parent: Option<NodeId>,
    /// Rule on the edge from the parent.
    pub rule: Option<Rule>,
    pub children: Vec<NodeId>,
    pub leaf: Option<(LeafKind, Option<FailReason>)>,
}

impl Node {
    pub fn is_leaf(&self) -> bool {
        self.leaf.is_some()
    }
}

/// Derivation tree, stored as an arena. Node ids follow a pre-order walk,
/// with the aligned branch of `(≈?C)` explored before the crossed one.
#[derive(Clone, Debug)]
pub struct DerivationTree {
    nodes: Vec<Node>,
}

impl DerivationTree {
    pub fn root(&self) -> &Node {
        &self.nodes[0]
    }

    pub fn node(&self, id: NodeId) -> &Node {
        &self.nodes[id]
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// `(parent, rule, child)` for every edge, in node order.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, Rule, NodeId)> + '_ {
        self.nodes
            .iter()
            .filter_map(|n| Some((n.parent?, n.rule?, n.id)))
    }

    pub fn leaves(&self) -> impl Iterator<Item = &Node> {
        self.nodes.iter().filter(|n| n.is_leaf())
    }

    pub fn successful_leaves(&self) -> impl Iterator<Item = &Node> {
        self.nodes
            .iter()
            .filter(|n| matches!(n.leaf, Some((LeafKind::Successful, _))))
    }

    pub fn successful_triples(&self) -> Vec<Triple> {
        self.successful_leaves().map(|n| n.triple.clone()).collect()
    }

    pub fn has_successful_leaf(&self) -> bool {
        self.successful_leaves().next().is_some()
    }

    pub fn count_rule(&self, rule: Rule) -> usize {
        self.nodes.iter().filter(|n| n.rule == Some(rule)).count()
    }
}

/// Builds the derivation tree of `⟨∇, P⟩`: every branch is first normalised
/// under `⇒≈`; leaves holding only fixpoint equations and freshness
/// constraints are then normalised under `⇒#`.
///
/// Each equational edge must decrease `⟨|Var(P≈)|, ‖P≈‖, |Pnfp≈|⟩`, each
/// freshness edge must decrease `‖P#‖`, and every node must be a valid
/// triple; a breach is reported as [`Error::InvariantViolation`].
pub fn build_derivation_tree(ctx: FreshnessContext, p: Problem) -> Result<DerivationTree, Error> {
    if let Some(bad) = p.ill_formed_application() {
        return Err(Error::malformed(bad));
    }
    let root = Triple::root(ctx, p);
    if !root.is_valid() {
        return Err(Error::InvariantViolation("root triple is not valid".into()));
    }
    let mut tree = DerivationTree { nodes: Vec::new() };
    expand(&mut tree, root, None, None)?;
    Ok(tree)
}

fn push(tree: &mut DerivationTree, triple: Triple, parent: Option<NodeId>, rule: Option<Rule>) -> NodeId {
    let id = tree.nodes.len();
    tree.nodes.push(Node {
        id,
        triple,
        parent,
        rule,
        children: Vec::new(),
        leaf: None,
    });
    if let Some(p) = parent {
        tree.nodes[p].children.push(id);
    }
    id
}

fn expand(
    tree: &mut DerivationTree,
    triple: Triple,
    parent: Option<NodeId>,
    rule: Option<Rule>,
) -> Result<NodeId, Error> {
    let id = push(tree, triple, parent, rule);
    let here = tree.nodes[id].triple.clone();
    let steps = reduce_eq_step(&here);
    if steps.is_empty() {
        if here.problem.non_fixpoints().next().is_some() {
            tree.nodes[id].leaf = Some((LeafKind::Fail, Some(FailReason::NonFixpointEquation)));
        } else {
            fresh_chain(tree, id)?;
        }
        return Ok(id);
    }
    let before = Measure::with_equation_size(&here.problem);
    for (rule, child) in steps {
        check_edge(&here, &child, rule)?;
        let after = Measure::with_equation_size(&child.problem);
        if after >= before {
            return Err(Error::InvariantViolation(format!(
                "measure did not decrease across {rule}: {before:?} -> {after:?}"
            )));
        }
        expand(tree, child, Some(id), Some(rule))?;
    }
    Ok(id)
}

fn fresh_chain(tree: &mut DerivationTree, mut id: NodeId) -> Result<(), Error> {
    loop {
        let here = tree.nodes[id].triple.clone();
        match reduce_fresh_step(&here) {
            Some((rule, next)) => {
                check_edge(&here, &next, rule)?;
                let (before, after) = (here.problem.freshness_size(), next.problem.freshness_size());
                if after >= before {
                    return Err(Error::InvariantViolation(format!(
                        "freshness size did not decrease across {rule}: {before} -> {after}"
                    )));
                }
                id = push(tree, next, Some(id), Some(rule));
            }
            None => {
                tree.nodes[id].leaf = Some(if here.problem.freshness().next().is_some() {
                    (LeafKind::Fail, Some(FailReason::StuckFreshness))
                } else {
                    (LeafKind::Successful, None)
                });
                return Ok(());
            }
        }
    }
}

fn check_edge(_from: &Triple, to: &Triple, rule: Rule) -> Result<(), Error> {
    if !to.is_valid() {
        return Err(Error::InvariantViolation(format!("invalid triple after {rule}")));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nominal::{Atom, Term};
    use crate::unifier::problem::Constraint;

    fn problem(cs: Vec<Constraint>) -> Problem {
        cs.into_iter().collect()
    }

    #[test]
    fn distinct_atoms_fail() {
        let tree = build_derivation_tree(
            FreshnessContext::new(),
            problem(vec![Constraint::eq(Term::atom("a"), Term::atom("b"))]),
        )
        .unwrap();
        assert_eq!(tree.len(), 1);
        assert_eq!(tree.root().leaf, Some((LeafKind::Fail, Some(FailReason::NonFixpointEquation))));
    }

    #[test]
    fn intro_problem_has_one_successful_leaf() {
        let a = Atom::new("a");
        let b = Atom::new("b");
        let lhs = Term::abs(a.clone(), Term::abs(b.clone(), Term::var("X")));
        let rhs = Term::abs(b, Term::abs(a, Term::var("X")));
        let tree =
            build_derivation_tree(FreshnessContext::new(), problem(vec![Constraint::eq(lhs, rhs)]))
                .unwrap();
        let leaves: Vec<_> = tree.successful_leaves().collect();
        assert_eq!(leaves.len(), 1);
        let leaf = &leaves[0].triple;
        assert!(leaf.subst.is_identity());
        assert_eq!(leaf.problem.len(), 1);
        let (p, x) = leaf.problem.iter().next().unwrap().as_fixpoint().unwrap();
        assert_eq!(x.name(), "X");
        assert!(p.same_action(&crate::nominal::Permutation::from_pairs([("a", "b")])));
    }

    #[test]
    fn stuck_freshness_fails() {
        let tree = build_derivation_tree(
            FreshnessContext::new(),
            problem(vec![Constraint::eq(
                Term::abs(Atom::new("a"), Term::atom("b")),
                Term::abs(Atom::new("b"), Term::atom("b")),
            )]),
        )
        .unwrap();
        assert!(!tree.has_successful_leaf());
    }

    #[test]
    fn malformed_problem_rejected() {
        let f = crate::nominal::FunctionSymbol::commutative("*");
        let err = build_derivation_tree(
            FreshnessContext::new(),
            problem(vec![Constraint::eq(Term::app(f, Term::var("X")), Term::Unit)]),
        )
        .unwrap_err();
        assert!(matches!(err, Error::MalformedProblem { .. }));
    }
}
