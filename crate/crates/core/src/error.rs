use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed input; `pointer` is a JSON pointer (or flag name) locating it.
    #[error("{pointer}: {message}")]
    Input { pointer: String, message: String },
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("unrepresentable: {0}")]
    Unrepresentable(String),
    #[error("period cap exceeded: aligned period {needed} > cap {cap}")]
    PeriodCap { needed: usize, cap: usize },
    #[error("ground set too large: {points} points exceeds the cap of {cap}")]
    TooLarge { points: usize, cap: usize },
    #[error("not a subfield: {0}")]
    NotSubfield(String),
    #[error("ideal not contained in the ambient field: {0}")]
    IdealNotInField(String),
    #[error("not in the field: {0}")]
    NotInField(String),
    #[error("not T1-measurable: {0}")]
    NotMeasurable(String),
    #[error("not integrable: {0}")]
    NotIntegrable(String),
    #[error("inconclusive: {0}")]
    Inconclusive(String),
    #[error("condition 2b violated: {0}")]
    Condition2b(String),
    #[error("completion identity violated: {0}")]
    CompletionIdentity(String),
    #[error("ambient space is not Peano-Jordan complete: {0}")]
    NotPjComplete(String),
    #[error("unknown theorem id: {0}")]
    UnknownTheorem(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }

    pub fn input(pointer: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Input { pointer: pointer.into(), message: message.into() }
    }

    pub fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }

    /// Process exit code used by the command line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Internal(_) => 3,
            _ => 2,
        }
    }
}
