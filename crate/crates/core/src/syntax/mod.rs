//! Text syntax for terms, contexts, problems and solutions.

mod parser;
mod printer;

pub use parser::{
    parse_context, parse_problem, parse_problem_with, parse_solution, parse_solution_with,
    parse_substitution_with, parse_term, parse_term_with, ParsedProblem,
};
pub use printer::{is_operator_name, print_problem, signature_line, OPERATOR_CHARS};
