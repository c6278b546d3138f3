use thiserror::Error as ThisError;

use crate::nominal::Term;

#[derive(Debug, Clone, PartialEq, Eq, ThisError)]
#[error("parse error at line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, ThisError)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("commutative symbol `{symbol}` applied to a non-pair in `{application}`")]
    MalformedProblem { symbol: String, application: String },

    #[error("well-formedness error: commutative symbol `{symbol}` applied to a non-pair in `{application}`")]
    WellFormedness { symbol: String, application: String },

    #[error("{variable} is not bound to a ground atom `a` or `b`")]
    NonGroundAssignment { variable: String },

    #[error("internal invariant violated: {0}")]
    InvariantViolation(String),
}

impl Error {
    pub(crate) fn malformed(app: &Term) -> Error {
        let symbol = match app {
            Term::App(f, _) => f.name().to_string(),
            _ => String::new(),
        };
        Error::MalformedProblem {
            symbol,
            application: app.to_string(),
        }
    }

    pub(crate) fn ill_formed_input(app: &Term) -> Error {
        match Error::malformed(app) {
            Error::MalformedProblem { symbol, application } => Error::WellFormedness { symbol, application },
            other => other,
        }
    }
}
