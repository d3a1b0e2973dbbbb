use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Validation(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("{what} = {got} exceeds guard {guard}; raise it with {knob}")]
    GuardExceeded {
        what: &'static str,
        got: usize,
        guard: usize,
        knob: &'static str,
    },

    #[error("C2 has no simple-graph realization; use the linearity predicate")]
    C2NotRealizable,

    #[error("unsupported pattern for this operation: {0}")]
    UnsupportedPattern(String),

    #[error("unknown bound name `{0}`")]
    UnknownBound(String),

    #[error("unbounded search: {0}")]
    Unbounded(String),

    #[error("invalid violation record: {0}")]
    InvalidViolation(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
