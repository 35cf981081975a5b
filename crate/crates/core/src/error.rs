use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid partition {0:?}: parts must be positive and weakly decreasing")]
    InvalidPartition(Vec<usize>),
    #[error("invalid tableau: {0}")]
    InvalidTableau(String),
    #[error("invalid permutation {0:?}")]
    InvalidPermutation(Vec<usize>),
    #[error("weight mismatch: {left} vs {right}")]
    WeightMismatch { left: usize, right: usize },
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("index {index} out of range 1..={bound}")]
    IndexOutOfRange { index: usize, bound: usize },
    #[error("ambient mismatch: {0}")]
    AmbientMismatch(String),
    #[error("polynomial is not homogeneous of degree {0}")]
    NotHomogeneous(usize),
    #[error("linear solve failed: {0}")]
    SolveFailed(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
