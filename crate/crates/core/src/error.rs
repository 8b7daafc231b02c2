use thiserror::Error;

/// Errors raised by the algebraic engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("argument `{0}` must be a positive integer")]
    NonPositive(&'static str),

    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("operation on the zero polynomial is undefined")]
    ZeroPolynomial,

    #[error("degree {degree} exceeds the configured cap of {cap}")]
    DegreeCap { degree: u64, cap: u64 },

    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("table value for prime {prime} must be a positive integer")]
    InvalidTableValue { prime: u64 },

    #[error("multiplicative function is undefined at prime {0}")]
    MissingPrime(u64),

    #[error("elements belong to different semidirect products")]
    MismatchedAlpha,

    #[error("solutions are governed by different (alpha, u) pairs")]
    MismatchedSolutions,

    #[error("seed for prime {0} is the zero polynomial")]
    ZeroSeed(u64),

    #[error("seeds for primes {p1} and {p2} are incompatible: {lhs} != {rhs}")]
    Incompatible {
        p1: u64,
        p2: u64,
        lhs: String,
        rhs: String,
    },

    #[error("factor order {order:?} is not a factorization of {n}")]
    InvalidFactorOrder { n: u64, order: Vec<u64> },

    #[error("solution is not governed by the untwisted family for this (alpha, u)")]
    NotUntwisted,
}

pub type Result<T> = std::result::Result<T, Error>;
