//! Combinatory solutions of fixpoint equations `π.X ≈? X`.
//!
//! A fixpoint equation always has the trivial solution that makes every atom
//! moved by `π` fresh for `X`. With commutative symbols it also has terms
//! `t` built from the atoms of a cycle `κ` of `π` with `κ·t ≈ t`; these are
//! the elements of unitary pseudo-cycles, which exist only for cycles whose
//! length is a power of two.

mod cycle;
mod pseudo;
mod solve;

pub use cycle::{cycle_decompose, fixed_atoms, Cycle};
pub use pseudo::{
    canonical_c, enumerate_unitary_pseudo_cycles, first_instance_closure,
    first_instance_pseudo_cycles, trivial_pseudo_cycle, PseudoCycle, UnitaryStream,
};
pub use solve::{
    admissible_cycles, combine_leaf_solutions, fixpoints_by_variable, solve_fixpoint_equation,
    trivial_solution, Bounds,
};
