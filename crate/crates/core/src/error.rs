use thiserror::Error;

/// Errors raised by the exact algebra layer and everything built on it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("mismatched quadratic fields: sqrt({0}) vs sqrt({1})")]
    FieldMismatch(i64, i64),
    #[error("{0} is not squarefree")]
    NotSquarefree(i64),
    #[error("gcd of two zero polynomials is undefined")]
    GcdOfZeros,
    #[error("valuation of zero is undefined")]
    ZeroValuation,
    #[error("pole at X = 0 (order {0})")]
    PoleAtZero(i64),
    #[error("the zero ideal is not a fractional ideal")]
    ZeroIdeal,
    #[error("mixed base domains")]
    MixedBaseDomains,
    #[error("ideal is not invertible")]
    NotInvertible,
    #[error("unsupported configuration: {0}")]
    Unsupported(String),
    #[error("not contained in T: {0}")]
    NotInT(String),
    #[error("evaluation outside the supported domain: {0}")]
    OutOfDomain(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("config error: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
