use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("group ring elements live in different symmetric groups (S_{left} vs S_{right})")]
    SizeMismatch { left: usize, right: usize },

    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error("component is infinite-dimensional without a bound on {0}")]
    Unbounded(&'static str),

    #[error("operator has {got} slots, {expected} arguments supplied")]
    SlotMismatch { expected: usize, got: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("element is not in the free Lie algebra: {0}")]
    NotLie(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T, E = AlgebraError> = std::result::Result<T, E>;
