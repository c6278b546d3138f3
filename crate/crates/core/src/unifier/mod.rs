//! Simplification of unification problems into a derivation tree whose
//! successful leaves hold only fixpoint equations.

mod problem;
mod rules;
mod solution;
mod translate;
mod tree;

pub use problem::{Constraint, Measure, Problem, Triple};
pub use rules::{reduce_eq_step, reduce_fresh_step, Rule};
pub use solution::{
    check_conditions, check_solution, check_solution_verdict, solution_leq, solution_leq_verdict,
    Solution, Verdict, WitnessBound,
};
pub use translate::translate_commutative_suspensions;
pub use tree::{build_derivation_tree, DerivationTree, FailReason, LeafKind, Node, NodeId};
