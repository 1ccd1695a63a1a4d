//! Numerical evaluation of the convergence analysis: inequality checks,
//! exact expectation identities over the Pauli set, and the closed-form
//! iteration-horizon constants.
//!
//! Every check reports lhs/rhs/slack through [`BoundReport`] so violations
//! are distinguishable from floating-point noise. Tolerances follow the
//! structure of each quantity: 1e-10 for pure algebra, 1e-9 for chains that
//! pass through eigendecompositions, and 3-standard-error bands for Monte
//! Carlo rows.
//!
//! Everything here is a pure function over immutable inputs.

#![forbid(unsafe_code)]

mod bounds;
mod error;
mod expectations;
mod horizon;
mod suite;

pub use bounds::{
    check_golden_thompson, check_normalization_bound, check_operator_jensen,
    check_progress_bound, check_scalar_log_inequality, meg_successor,
};
pub use error::Error;
pub use expectations::{expected_loss_noiseless, expected_loss_noisy, expected_noise_variance};
pub use horizon::{
    noiseless_convergence_horizon, noisy_convergence_horizon, riemann_zeta, Horizon, TheoryParams,
};
pub use suite::{run_full_suite, SuiteConfig, SuiteRow};

pub type Result<T> = std::result::Result<T, Error>;

/// Outcome of one inequality evaluation: `satisfied ⟺ slack ≥ −tolerance`
/// with `slack = rhs − lhs`.
#[derive(Debug, Clone, Copy)]
pub struct BoundReport {
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
    pub satisfied: bool,
    pub tolerance: f64,
}

impl BoundReport {
    pub fn evaluate(lhs: f64, rhs: f64, tolerance: f64) -> Self {
        let slack = rhs - lhs;
        Self {
            lhs,
            rhs,
            slack,
            satisfied: slack >= -tolerance,
            tolerance,
        }
    }
}
