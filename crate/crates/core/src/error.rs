use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("undeclared variable `{name}` at line {line}, column {column}")]
    UndeclaredVariable {
        name: String,
        line: usize,
        column: usize,
    },

    #[error("invalid variable declaration: {0}")]
    InvalidVariable(String),

    #[error("duplicate variable `{name}` at line {line}")]
    DuplicateVariable { name: String, line: usize },

    #[error("`next` is not allowed in {kind} units (line {line})")]
    NextOutsideInvariant { kind: &'static str, line: usize },

    #[error("{vars} variables exceed the configured cap of {cap}")]
    CapExceeded { vars: usize, cap: usize },

    #[error("variable tables differ: {0}")]
    VarMismatch(String),

    #[error("precondition violated: {0}")]
    Precondition(&'static str),

    #[error(
        "power iteration did not converge after {iterations} iterations (residual {residual:e})"
    )]
    NonConvergence { iterations: usize, residual: f64 },
}
