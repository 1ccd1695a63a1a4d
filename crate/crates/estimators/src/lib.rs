//! Online quantum-state estimators with a uniform record-in / estimate-out
//! interface.
//!
//! Four algorithms share the [`Estimator`] front:
//!
//! - [`MegState`]: matrix-exponentiated gradient. Keeps a log-domain
//!   accumulator `G` and recovers the estimate as `exp(G)/tr exp(G)`, so
//!   every iterate is positive semidefinite by construction. Learning
//!   rates come from a [`LearningRateSchedule`] (constant, power-law
//!   decreasing, or the error-proxy "oracle" rate).
//! - [`MlState`]: diluted maximum likelihood over the normalized Pauli
//!   projector POVM, iterating `ρ̂ ← (I+εR)ρ̂(I+εR)/norm`.
//! - [`LsState`]: online least squares against the fixed projector design
//!   matrix, with a cached pseudoinverse and a physical-space projection
//!   after each solve.
//! - [`PgdState`]: projected gradient descent, a plain loss-gradient step
//!   followed by projection back to the density-matrix set.
//!
//! MEG and PGD optionally consume per-observable running averages instead
//! of raw outcomes ([`InputModeKind::RunningAverage`]), which suppresses
//! shot noise without an adaptive learning rate.
//!
//! Estimator state is a single-owner mutable value; updates are strictly
//! sequential per state. Distinct trials run concurrently on independent
//! states.

#![forbid(unsafe_code)]

mod error;
mod kind;
mod ls;
mod meg;
mod ml;
mod pgd;
mod schedule;

pub use error::Error;
pub use kind::{Estimator, EstimatorKind, EstimatorParams};
pub use ls::LsState;
pub use meg::{meg_loss, InputMode, InputModeKind, MegState};
pub use ml::MlState;
pub use pgd::PgdState;
pub use schedule::LearningRateSchedule;

pub type Result<T> = std::result::Result<T, Error>;
