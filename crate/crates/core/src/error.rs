//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error(
        "eta quotient has non-integral leading exponent: sum m*e = {0} is not divisible by 24"
    )]
    NonIntegralLead(i64),

    #[error("division by a series that is zero to working precision")]
    ZeroSeries,

    #[error("insufficient precision: need coefficients below q^{needed}, have below q^{have}")]
    InsufficientPrecision { needed: i64, have: i64 },

    #[error("precision exhausted: value is zero to working precision")]
    PrecisionExhausted,

    #[error("no unique dominant term (tie at spectral valuation {0})")]
    DominantTermTie(i64),

    #[error("linear system is singular")]
    SingularSystem,

    #[error("linear system is inconsistent: {0}")]
    InconsistentSystem(String),

    #[error("root count mismatch: expected {expected}, found {found}")]
    RootCountMismatch { expected: usize, found: usize },

    #[error("dimension formula produced a non-integer for exponent {0}")]
    NonIntegerDimension(i64),

    #[error("character exponent {0} is not primitive of conductor 49")]
    NotPrimitive(i64),

    #[error("character parity does not match weight {0}")]
    ParityMismatch(i64),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("data file corrupted: {0}")]
    DataFile(String),
}

pub type Result<T> = std::result::Result<T, Error>;
