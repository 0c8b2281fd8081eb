use thiserror::Error;

use crate::Rational;

/// Errors raised by the toolkit's operations.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension n must be at least 1")]
    ZeroDimension,

    #[error("dimension n = {n} exceeds the configured cap {max}")]
    DimensionTooLarge { n: usize, max: usize },

    #[error("{what} = {value} is out of range for n = {n}")]
    OutOfRange { what: &'static str, value: i64, n: usize },

    #[error("weight-sum t = {t} does not match the parity of n = {n}")]
    ParityMismatch { n: usize, t: i64 },

    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("invalid profile: induced mass {value} < 0 at t = {t}")]
    InvalidProfile { t: i64, value: Rational },

    #[error("test is unbounded below: value {value} < -1 at t = {t}")]
    UnboundedBelow { t: i64, value: Rational },

    #[error("precondition not met: {0}")]
    Precondition(String),

    #[error("distribution has empty support")]
    EmptySupport,

    #[error("vertex enumeration budget exceeded: n = {n} > {max}")]
    BudgetExceeded { n: usize, max: usize },

    #[error("real-rootedness certificate failed")]
    CertificateFailure,

    #[error("zero polynomial")]
    ZeroPolynomial,

    #[error("linear program is infeasible")]
    Infeasible,

    #[error("linear program is unbounded")]
    Unbounded,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
