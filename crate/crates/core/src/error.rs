use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    /// Exact division failed. Reported as a failed check, not a crash.
    #[error("not divisible")]
    NotDivisible,

    #[error("coefficient of t^{degree} is not an integral Laurent polynomial: {coefficient}")]
    NotIntegral { degree: usize, coefficient: String },

    #[error("DT_{n}(q) is not a Laurent polynomial: {value}")]
    NonLaurent { n: u64, value: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// Arithmetic that must be exact was not; signals an implementation bug.
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
