use thiserror::Error;

use crate::shift::Symbol;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unsupported enumeration: {0}")]
    UnsupportedEnumeration(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid {field}: {message}")]
    Validation { field: String, message: String },

    #[error("compact approximation failed at level {level}: no connector of length {length} from {from} to {to}")]
    ConstructionFailure {
        level: usize,
        from: Symbol,
        to: Symbol,
        length: usize,
    },

    #[error("{operation} did not converge: {message}")]
    NonConvergence { operation: String, message: String },

    #[error("{operation} exceeded its budget: {message}")]
    Budget { operation: String, message: String },

    #[error("depth exhausted: averaging length {averaging} must be below cylinder depth {depth}")]
    DepthExhaustion { depth: usize, averaging: usize },

    #[error("applicability condition not met: cutoff must be at least {required}")]
    ConditionNotMet { required: Symbol },

    #[error("internal consistency violated: {0}")]
    InternalConsistency(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn validation(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Validation {
            field: field.into(),
            message: message.into(),
        }
    }

    /// True for input problems (bad configuration, symbols outside the alphabet, ...),
    /// false for numerical failures.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Validation { .. }
                | Error::Domain(_)
                | Error::UnsupportedEnumeration(_)
                | Error::Json(_)
                | Error::Io(_)
        )
    }
}
