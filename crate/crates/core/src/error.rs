use thiserror::Error;

use crate::reduction::dense::DenseReport;

#[derive(Debug, Error)]
pub enum Error {
    #[error("norm form of zero undefined")]
    ZeroNormForm,
    #[error("no value assigned to {0}")]
    MissingAssignment(String),
    #[error("zero base raised to a negative power")]
    ZeroToNegativePower,
    #[error("coefficient variable inside a support monomial")]
    CoeffInSupport,
    #[error("malformed system: {0}")]
    Malformed(String),
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("system is not Laurent transformally essential")]
    NotEssential,
    #[error("bounds exceeded: {0}")]
    BoundsExceeded(String),
    #[error("internal consistency failure: {0}")]
    InternalConsistency(String),
    #[error("degenerate specialization: {0}")]
    DegenerateSpecialization(String),
    #[error("degenerate lattice: support vectors span a rank-{rank} sublattice of Z^{dim}")]
    DegenerateLattice { rank: usize, dim: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("no essential subset")]
    NoEssentialSubset,
    #[error("size guard exceeded (theoretical degree report attached)")]
    SizeGuard(Box<DenseReport>),
    #[error("configuration too large: {0}")]
    TooLarge(String),
    #[error("invalid certificate: {0}")]
    Certificate(String),
}

pub type Result<T> = std::result::Result<T, Error>;
