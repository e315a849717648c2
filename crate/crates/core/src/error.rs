use thiserror::Error;

/// Errors raised by the calculator.
///
/// Each variant maps onto one of the process exit codes used by the CLI
/// (see [`Error::exit_code`]).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed input: bad JSON, bad relation text, invalid constructor data.
    #[error("parse error: {0}")]
    Parse(String),

    /// Input parses but violates a structural invariant.
    #[error("validation error: {0}")]
    Validation(String),

    /// A theorem hypothesis is missing or fails on the supplied data.
    #[error("hypothesis `{hypothesis}` failed: {detail}")]
    Hypothesis { hypothesis: String, detail: String },

    /// An operation needs more degrees than its operand carries.
    #[error("truncation too small: need degree {needed}, operand truncated at {available}")]
    Truncation { needed: usize, available: usize },

    /// The series has no exact integer reciprocal.
    #[error("series is not invertible: constant term {0}")]
    NonInvertible(String),

    /// The coefficient ring is not accepted by this operation.
    #[error("unsupported coefficient ring: {0}")]
    UnsupportedCoefficient(String),

    /// Expression shape outside what the evaluator can compute.
    #[error("unsupported expression: {0}")]
    Unsupported(String),

    /// A configured brute-force cap was exceeded.
    #[error("resource cap exceeded: {0}")]
    Resource(String),

    /// Two computation paths disagree.
    #[error("verification failed: {0}")]
    Verification(String),
}

impl Error {
    pub fn hypothesis(hypothesis: impl Into<String>, detail: impl Into<String>) -> Self {
        Error::Hypothesis {
            hypothesis: hypothesis.into(),
            detail: detail.into(),
        }
    }

    /// Process exit status for this error.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_)
            | Error::Validation(_)
            | Error::Hypothesis { .. }
            | Error::Truncation { .. }
            | Error::NonInvertible(_) => 1,
            Error::Verification(_) => 2,
            Error::Unsupported(_) | Error::UnsupportedCoefficient(_) => 3,
            Error::Resource(_) => 4,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
