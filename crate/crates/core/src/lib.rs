//! Nominal unification modulo commutativity.
//!
//! Problems `⟨∇, P⟩` over nominal terms with commutative symbols are
//! simplified into a finite derivation tree ([`unifier`]). Successful leaves
//! hold only fixpoint equations `π.X ≈? X`, whose infinitely many
//! combinatory solutions are enumerated up to a bound ([`fixpoint`]).
//!
//! ```
//! use nomcu_core::syntax::parse_problem;
//! use nomcu_core::unifier::build_derivation_tree;
//!
//! let parsed = parse_problem("{} |- [a][b]X =? [b][a]X").unwrap();
//! let tree = build_derivation_tree(parsed.ctx, parsed.problem).unwrap();
//! assert_eq!(tree.successful_leaves().count(), 1);
//! ```

mod error;
pub mod fixpoint;
pub mod nominal;
pub mod oracle;
pub mod relations;
pub mod report;
pub mod sat;
pub mod syntax;
pub mod unifier;

pub use error::{Error, ParseError};
pub use nominal::{Atom, FunctionSymbol, Permutation, Substitution, Swapping, Term, Theory, Variable};
pub use relations::{alpha_c_equiv, alpha_equiv, check_fresh, FreshnessContext};
pub use unifier::{build_derivation_tree, check_solution, Constraint, DerivationTree, Problem, Solution, Triple};
