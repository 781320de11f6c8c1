use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid label: {0}")]
    InvalidLabel(String),
    #[error("negative radicand {value} at index {index}: label outside the unitary regime")]
    NegativeRadicand { index: i128, value: f64 },
    #[error("cutoff required for an infinite-dimensional representation")]
    CutoffRequired,
    #[error("cutoff given for a finite representation of dimension {0}")]
    CutoffNotAllowed(usize),
    #[error("empty subspace: {0}")]
    EmptySubspace(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("pole: denominator vanishes at basis index {0}")]
    Pole(usize),
    #[error("operation needs an infinite (truncated) representation")]
    FiniteRep,
    #[error("series did not converge: {0}")]
    NonConvergence(String),
    #[error("divergent series: {0}")]
    Divergence(String),
    #[error("underdetermined fit: {points} points for degree {degree}")]
    Underdetermined { points: usize, degree: usize },
    #[error("cutoff insufficient: {0}")]
    CutoffInsufficient(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
