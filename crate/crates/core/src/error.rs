use thiserror::Error;

/// Errors raised by the analysis routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid dimension {0}: n must be at least 1")]
    InvalidDimension(usize),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("not a permutation of 1..={n}: {images:?}")]
    InvalidPermutation { n: usize, images: Vec<usize> },

    #[error("counts {counts:?} do not describe a type for n = {n} (sum of i*c_i must equal n)")]
    InvalidType { n: usize, counts: Vec<usize> },

    #[error("enumeration of S_{n} exceeds the configured limit n <= {limit}")]
    Capacity { n: usize, limit: usize },

    #[error("duplicate point {0}")]
    DuplicatePoint(String),

    #[error("duplicate basis function {0}")]
    DuplicateFunction(String),

    #[error("set is not symmetric: {element} maps to {image} under {permutation}, which is missing")]
    NotSymmetric {
        element: String,
        image: String,
        permutation: String,
    },

    #[error("size mismatch: {functions} basis functions but {points} nodes")]
    SizeMismatch { functions: usize, points: usize },

    #[error("empty interpolation problem")]
    Empty,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
