use thiserror::Error;

/// Errors raised by the permutation algebra, the oracle and the formula layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("degree must be at least 1")]
    ZeroDegree,

    #[error("not a permutation: {0}")]
    NotBijective(String),

    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("degree {n} exceeds the exhaustive bound {bound}")]
    TooLarge { n: usize, bound: usize },

    #[error("argument out of range: {0}")]
    OutOfRange(String),

    #[error("cycle {0} commutes with the other permutation")]
    CycleCommutes(usize),

    #[error("no closed form for k={k} and cycle type {cycle_type}; use the exhaustive oracle (--method brute)")]
    NoClosedForm { k: usize, cycle_type: String },

    #[error("invalid choice: {0}")]
    InvalidChoice(String),

    #[error("series truncation orders differ: {0:?} vs {1:?}")]
    OrderMismatch((usize, usize), (usize, usize)),

    #[error("series must have zero constant term for {0}")]
    NonzeroConstant(&'static str),

    #[error("output stream closed")]
    OutputClosed,

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
