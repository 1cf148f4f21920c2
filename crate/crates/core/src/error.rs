use thiserror::Error;

/// Errors raised by diagram, matrix and representation operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("shape mismatch: cannot compose ({m1},{n1}) with ({m2},{n2})")]
    CompositionShape {
        m1: usize,
        n1: usize,
        m2: usize,
        n2: usize,
    },

    #[error("shape mismatch: expected ({expected_m},{expected_n}), found ({found_m},{found_n})")]
    ShapeMismatch {
        expected_m: usize,
        expected_n: usize,
        found_m: usize,
        found_n: usize,
    },

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("enumeration guard exceeded: size {size} > limit {limit}")]
    GuardExceeded { size: usize, limit: usize },

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("matrix labels do not match: {0}")]
    LabelMismatch(String),

    #[error("semiring mismatch: {left} vs {right}")]
    SemiringMismatch { left: String, right: String },

    #[error("representation inapplicable: {0}")]
    Inapplicable(String),

    #[error("diagram not in required family: {0}")]
    WrongFamily(String),
}

pub type Result<T> = std::result::Result<T, Error>;
