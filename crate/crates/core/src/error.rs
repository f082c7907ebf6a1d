use thiserror::Error;

use crate::exact::Var;

/// Errors raised by the engine. Every computation is exact, so these are
/// all contract violations or malformed input, never numerical failures.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("variable `{0}` is missing from the assignment")]
    MissingVariable(Var),

    #[error("malformed rational `{0}`")]
    MalformedRational(String),

    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("unknown generator family `{0}`")]
    UnknownGenerator(String),

    #[error("mode {0} is not a creation operator on the vacuum expression")]
    NotCreation(String),

    #[error("state vector belongs to a different module")]
    ModuleMismatch,

    #[error("vector is not homogeneous")]
    NotHomogeneous,

    #[error("vector is not in the span of the given basis")]
    NotInSpan,

    #[error("state of level {level} exceeds the truncation level {truncation}")]
    TruncationExceeded { level: i64, truncation: i64 },

    #[error("invalid central charge: 22 + 5c vanishes")]
    DegenerateCentralCharge,

    #[error("k = -{0} is a pole of the central charge formula")]
    Pole(i64),

    #[error("n must be at least 2, got {0}")]
    RankTooSmall(i64),

    #[error("alpha = 1 is excluded; the same module is labelled by alpha = 0")]
    ExcludedLabel,

    #[error("{0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
