use thiserror::Error;

/// Errors raised by the core library.
///
/// Variants split into two groups: malformed or inconsistent input
/// ([`Error::is_validation`]) and failures of an otherwise well-posed
/// computation (precision ceiling, support outside `Q(i)`).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),

    #[error("not a permutation: {0}")]
    NotAPermutation(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid origami: {0}")]
    InvalidOrigami(String),

    #[error("out of range: {0}")]
    OutOfRange(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("zero polynomial")]
    ZeroPolynomial,

    #[error("division by zero")]
    DivisionByZero,

    #[error("invalid curve: {0}")]
    InvalidCurve(String),

    #[error("function is identically zero on the curve")]
    ZeroFunction,

    #[error("invalid cover: {0}")]
    InvalidCover(String),

    #[error("state space bound exceeded: {0}")]
    StateSpaceExceeded(String),

    #[error("precision ceiling of {0} terms exceeded")]
    PrecisionExceeded(usize),

    #[error("support not rational over Q(i): {0}")]
    NonRationalSupport(String),

    #[error("unbalanced divisor: degree {found}, expected {expected}")]
    UnbalancedDivisor { found: i64, expected: i64 },

    #[error("differential is not holomorphic: {0}")]
    NotHolomorphic(String),

    #[error("inconsistent input: {0}")]
    Inconsistent(String),
}

impl Error {
    /// `true` for errors caused by malformed input rather than by the computation itself.
    pub fn is_validation(&self) -> bool {
        !matches!(
            self,
            Error::PrecisionExceeded(_)
                | Error::NonRationalSupport(_)
                | Error::UnbalancedDivisor { .. }
                | Error::StateSpaceExceeded(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
