use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("index out of range: {0}")]
    OutOfRange(String),

    #[error("argument vector too short: need {needed} entries, got {got}")]
    InsufficientArguments { needed: usize, got: usize },

    #[error("inner series must have zero constant term")]
    NonZeroConstantTerm,

    #[error("parse error: {0}")]
    Parse(String),

    /// Adaptive quadrature hit its subdivision cap before reaching the tolerance.
    #[error("quadrature did not converge: achieved error {achieved:e}, requested {requested:e}")]
    Quadrature { achieved: f64, requested: f64 },
}
