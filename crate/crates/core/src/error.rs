use thiserror::Error;

use crate::magma::ParseError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid rational {0:?}")]
    InvalidRational(String),

    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("division by the zero polynomial")]
    ZeroDivisor,

    #[error("linear system is singular")]
    Singular,

    #[error("element has weight {0}, expected 1")]
    WeightNotOne(String),

    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),

    #[error("invalid mutation data: {0}")]
    InvalidMutation(String),

    #[error("generated subalgebra violates the backcrossing product table: {0}")]
    LemmaViolation(String),

    #[error("{0} does not lie in the kernel of the weight")]
    NotInWeightKernel(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("criterion fails: {0}")]
    CriterionFails(String),

    #[error("not enough polynomials: {0}")]
    InsufficientFamily(String),

    #[error("internal consistency check failed: {0}")]
    Internal(String),

    #[error("invalid input file: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;
