use thiserror::Error;

use crate::field::{FieldError, FieldSpec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("basis change is singular (ad - bc = 0)")]
    SingularMatrix,
    #[error("{0} requires a field of characteristic other than 2")]
    Characteristic2(&'static str),
    #[error("unsupported field {field} for {operation}")]
    UnsupportedField {
        field: FieldSpec,
        operation: &'static str,
    },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invalid parameters for {family}: {reason}")]
    InvalidParams { family: String, reason: String },
    #[error("malformed input: {0}")]
    Format(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
