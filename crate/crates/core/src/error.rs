use num_bigint::BigInt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("surface invariant e must be non-negative, got {0}")]
    NegativeInvariant(BigInt),

    #[error("{a}C0+{b}f is not very ample on F_{e} (need a >= 1 and b >= a*e + 1)")]
    NotVeryAmple { a: BigInt, b: BigInt, e: BigInt },

    #[error("precondition failed: {0}")]
    PreconditionFailed(String),

    #[error("no normal-bundle rule applies to {0}")]
    NoRuleApplies(String),

    #[error("a = {0} is not supported (scroll carpets have no exactness rules)")]
    UnsupportedA(BigInt),

    #[error("invalid query: {0}")]
    InvalidQuery(String),
}

impl Error {
    /// Errors that mean "the engine cannot decide", as opposed to bad input.
    pub fn is_indeterminate(&self) -> bool {
        matches!(self, Error::NoRuleApplies(_) | Error::UnsupportedA(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
