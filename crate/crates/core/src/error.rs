use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("boundary lengths must not all be zero")]
    AllZero,
    #[error("need at least {min} boundaries, got {got}")]
    TooFewBoundaries { min: usize, got: usize },
    #[error("{method} formula needs {expected}, got {odd} odd lengths")]
    ParityMismatch {
        method: &'static str,
        expected: &'static str,
        odd: usize,
    },
    #[error("multinomial parts sum to {total}, expected {n}")]
    MultinomialSum { n: i64, total: i64 },
    #[error("{darts} darts exceeds the cap of {cap}")]
    DartCap { darts: usize, cap: usize },
    #[error("size {size} exceeds the cap of {cap}")]
    SizeCap { size: usize, cap: usize },
    #[error("inconsistent type array: {equation} fails ({lhs} vs {rhs})")]
    InconsistentTypeArray {
        equation: &'static str,
        lhs: usize,
        rhs: usize,
    },
    #[error("malformed word at index {index}: {reason}")]
    MalformedWord { index: usize, reason: &'static str },
    #[error("precondition failed: {0}")]
    Precondition(&'static str),
    #[error("malformed tree: {0}")]
    MalformedTree(&'static str),
}
