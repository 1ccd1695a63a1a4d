//! Dense Hermitian linear algebra and quantum-information metrics.
//!
//! Everything here operates on small-to-medium dense complex matrices
//! (d ≤ 128). The two core types are [`HermitianMatrix`], which guarantees
//! exact conjugate symmetry, and [`DensityMatrix`], which additionally
//! guarantees positive semidefiniteness and unit trace. Matrix functions
//! (`exp`, `log`, normalized exponential) go through a single
//! eigendecomposition path; there is no Padé or scaling-and-squaring
//! variant.
//!
//! All types are immutable values and all operations are pure functions,
//! so everything can be called concurrently without synchronization.

#![forbid(unsafe_code)]

mod eigen;
mod error;
mod matrix;
mod metrics;
mod project;

pub use eigen::EigenDecomposition;
pub use error::Error;
pub use matrix::{DensityMatrix, HermitianMatrix};
pub use metrics::{frobenius_sq_distance, infidelity, relative_entropy, DEFAULT_EIGENVALUE_FLOOR};
pub use project::project_to_physical;

pub type Result<T> = std::result::Result<T, Error>;

/// Maximum tolerated conjugate-symmetry violation before an input matrix
/// is rejected as non-Hermitian.
pub const HERMITICITY_TOLERANCE: f64 = 1e-8;

/// Eigenvalues below this are treated as evidence of a non-PSD input.
pub const PSD_TOLERANCE: f64 = 1e-8;

/// Validation tolerances for [`DensityMatrix`]: minimum eigenvalue and
/// trace deviation.
pub const DENSITY_EIGENVALUE_TOLERANCE: f64 = 1e-10;
pub const DENSITY_TRACE_TOLERANCE: f64 = 1e-10;
