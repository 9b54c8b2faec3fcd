//! One error type for the whole crate. The runner maps variants onto process
//! exit codes, so keep the split between "bad input", "degenerate object" and
//! "violated hypothesis" intact when adding variants.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),

    #[error("{a} is not invertible mod {p}")]
    NotInvertible { a: u64, p: u64 },

    /// 4A^3 + 27B^2 = 0 mod p: not an elliptic curve.
    #[error("singular curve y^2 = x^3 + {a}x + {b} over F_{p}")]
    SingularCurve { p: u64, a: u64, b: u64 },

    /// Zero discriminant polynomial or constant j-invariant.
    #[error("degenerate family: {0}")]
    DegenerateFamily(String),

    /// A lemma-level hypothesis (p > T, ell >= 17, ...) does not hold.
    #[error("hypothesis violation: {0}")]
    HypothesisViolation(String),

    #[error("config error: {0}")]
    Config(String),

    #[error("suite criterion failed: {0}")]
    SuiteFailed(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
