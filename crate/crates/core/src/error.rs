use thiserror::Error;

use crate::scalar::ScalarKind;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("scalar kind mismatch: {left} vs {right}")]
    KindMismatch { left: ScalarKind, right: ScalarKind },

    #[error("operation requires {expected} scalars, got {found}")]
    WrongKind { expected: &'static str, found: ScalarKind },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("division by zero")]
    DivisionByZero,

    #[error("non-finite entry in float matrix")]
    NonFinite,

    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),

    #[error("z not central: [z, e{index}] != 0")]
    NotCentral { index: usize },

    #[error("z is not even: component {index} has odd degree")]
    OddCentralElement { index: usize },

    #[error("grading violation: {0}")]
    Grading(String),

    #[error("domain violation: {0}")]
    Domain(String),

    #[error("{what} out of range: {value}")]
    OutOfRange { what: &'static str, value: String },

    #[error("invalid value for `{field}`: {message}")]
    Parse { field: String, message: String },

    #[error("quadrature did not converge: {0}")]
    Quadrature(String),
}

impl Error {
    pub fn parse(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            field: field.into(),
            message: message.into(),
        }
    }

    /// Prefixes the field path of a parse error, leaving other errors untouched.
    pub fn in_field(self, prefix: &str) -> Self {
        match self {
            Error::Parse { field, message } => Error::Parse {
                field: if field.is_empty() {
                    prefix.to_string()
                } else if field.starts_with('[') {
                    format!("{prefix}{field}")
                } else {
                    format!("{prefix}.{field}")
                },
                message,
            },
            other => other,
        }
    }
}
