use thiserror::Error;

/// Errors for Hermitian matrix construction and metric evaluation.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix must be non-empty")]
    Empty,

    #[error("dimension mismatch: {0}x{0} vs {1}x{1}")]
    DimensionMismatch(usize, usize),

    #[error("not Hermitian (max symmetry violation {0:.3e})")]
    NotHermitian(f64),

    #[error("not positive semidefinite (min eigenvalue {0:.3e})")]
    NotPositiveSemidefinite(f64),

    #[error("eigenvalues violate density-matrix positivity (min eigenvalue {0:.3e})")]
    NotPositive(f64),

    #[error("trace must be 1 (got {0})")]
    InvalidTrace(f64),
}
