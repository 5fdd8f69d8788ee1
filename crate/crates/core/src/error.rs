use thiserror::Error;

use crate::syntax::Sort;

/// Line and column of a token, both 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SourcePosition {
    pub line: usize,
    pub column: usize,
}

impl std::fmt::Display for SourcePosition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("{pos}: syntax error: {message}{}", expected_suffix(.expected))]
    Syntax {
        pos: SourcePosition,
        message: String,
        expected: Vec<String>,
    },
    #[error("duplicate declaration of `{0}`")]
    DuplicateDeclaration(String),
    #[error("{pos}: `{symbol}` expects {expected} argument(s), found {found}")]
    ArityMismatch {
        pos: SourcePosition,
        symbol: String,
        expected: usize,
        found: usize,
    },
    #[error("{pos}: undeclared symbol `{name}`")]
    Undeclared { pos: SourcePosition, name: String },
    #[error("`{name}` is used both as {first} and as {second}")]
    SortConflict { name: String, first: Sort, second: Sort },
    #[error("substitution maps variable `{var}` of sort {expected} to a term of sort {found}")]
    SortMismatch { var: String, expected: Sort, found: Sort },
    #[error("division by zero")]
    DivisionByZero,
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("solver error: {0}")]
    Solver(String),
    #[error("model error: {0}")]
    Model(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn expected_suffix(expected: &[String]) -> String {
    if expected.is_empty() {
        String::new()
    } else {
        format!(" (expected one of: {})", expected.join(", "))
    }
}
