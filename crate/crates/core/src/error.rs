use thiserror::Error;

/// Errors reported by the algebra layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    /// A denominator vanished after specializing the parameter.
    #[error("pole: denominator vanishes at kappa = {0}")]
    Pole(String),

    #[error("representation mismatch: {0}")]
    RepMismatch(String),

    #[error("variable count mismatch: expected {expected}, got {got}")]
    NVarsMismatch { expected: usize, got: usize },

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("singular change of basis in degree {degree}")]
    SingularBasis { degree: u32 },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
