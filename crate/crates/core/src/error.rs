use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("polynomials live in different rings")]
    RingMismatch,

    #[error("free-module rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("{0} must be non-zero")]
    ZeroDivisor(&'static str),

    #[error("saturation did not stabilize within {0} steps")]
    SaturationCap(usize),

    #[error("generators are not homogeneous")]
    NotHomogeneous,

    #[error("matrix has non-zero trace {0}")]
    NonZeroTrace(String),

    #[error("matrix is not nilpotent")]
    NotNilpotent,

    #[error("subspace is not a subalgebra")]
    NotSubalgebra,

    #[error("elements belong to different Lie algebras")]
    ParentMismatch,

    #[error("Lie algebra violates {0}")]
    InvalidStructure(String),

    #[error("non-abelian 2-dimensional subalgebra with derived algebra of dimension {0}")]
    DerivedDimension(usize),

    #[error("invalid root system {0}")]
    InvalidRootSystem(String),

    #[error("form has degree 0")]
    DegreeZero,

    #[error("negative argument {0}")]
    Negative(i64),

    #[error("partition {0} has no part equal to 5")]
    NoPartFive(String),

    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
