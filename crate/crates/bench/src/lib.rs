//! Inputs shared by the benchmarks.

use nomcu_core::sat::OneInThreeInstance;
use nomcu_core::syntax::{parse_problem, ParsedProblem};

pub const INTRO: &str = "{} |- [a][b]X =? [b][a]X";
pub const FIXPOINT: &str = "{} |- [e]((a b).X * Y) =? [f]((a c)(c d).X * Y)";

pub fn parsed(text: &str) -> ParsedProblem {
    parse_problem(text).expect("benchmark input parses")
}

/// `n` nested commutative applications on each side.
pub fn nested_commutative(n: usize) -> ParsedProblem {
    let mut lhs = "X0".to_string();
    let mut rhs = "a0".to_string();
    for i in 1..=n {
        lhs = format!("({lhs}) * X{i}");
        rhs = format!("a{i} * ({rhs})");
    }
    parsed(&format!("{{}} |- {lhs} =? {rhs}"))
}

/// A chain of `n` clauses `x_i x_{i+1} y_i`, satisfiable.
pub fn clause_chain(n: usize) -> OneInThreeInstance {
    OneInThreeInstance::new((0..n).map(|i| [format!("x{i}"), format!("x{}", i + 1), format!("y{i}")]))
}
