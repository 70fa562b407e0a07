use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("valuation base must be at least 2, got {0}")]
    InvalidBase(u64),

    #[error("k = {k} is out of range 0..=floor({n}/2)")]
    TermIndexOutOfRange { n: u64, k: u64 },

    #[error("{0} requires n >= 1")]
    ZeroArgument(&'static str),

    #[error("inexact division while computing {0}")]
    InexactDivision(&'static str),

    #[error("invalid ternary digit vector: {0}")]
    InvalidDigits(String),

    #[error("malformed linear representation: {0}")]
    MalformedRepresentation(String),

    #[error("invariant violated: {0}")]
    InvariantViolation(String),

    #[error("empty range: lo = {lo} exceeds hi = {hi}")]
    EmptyRange { lo: u64, hi: u64 },

    #[error("arithmetic overflow: {0}")]
    Overflow(&'static str),
}
