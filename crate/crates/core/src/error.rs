use thiserror::Error;

/// Errors raised by the algebra routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("linear form is identically zero")]
    ZeroForm,

    #[error("variable count mismatch: expected {expected}, found {found}")]
    VarCountMismatch { expected: usize, found: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// The Hilbert function did not reach zero by the degree cap. The cap is an
    /// engineering bound for non-power ideals, not a theorem.
    #[error(
        "quotient is not Artinian or not provably so: dims {partial:?} still nonzero at degree cap {cap}"
    )]
    NotArtinian { partial: Vec<usize>, cap: u32 },

    #[error("linear form is not generic: {0}")]
    Genericity(String),

    #[error("operation requires an ideal generated by powers of linear forms")]
    NotPowerIdeal,

    /// Two independent computations of the same quantity disagreed.
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
