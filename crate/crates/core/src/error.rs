use thiserror::Error;

/// Errors raised by the geometry, search and sphere modules.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("empty input: {0}")]
    EmptyInput(&'static str),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("point set is not full-dimensional: affine rank {rank} in ambient dimension {dim}")]
    NotFullDimensional { rank: usize, dim: usize },

    #[error("vertex centroid is not interior to the polytope")]
    CentroidNotInterior,

    #[error("polytope is not {k}-neighborly")]
    NotNeighborly { k: usize },

    #[error("coefficients do not reproduce the target point")]
    CoefficientMismatch,

    #[error("triangle {0:?} found in a skeleton assumed triangle-free")]
    Triangle([usize; 3]),

    #[error("vertex {vertex} has degree {degree}, need at least {needed}")]
    DegreeTooSmall { vertex: usize, degree: usize, needed: usize },

    #[error("non-finite map value at point {point:?}")]
    NonFinite { point: Vec<f64> },

    #[error("invalid witness: {0}")]
    InvalidWitness(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
