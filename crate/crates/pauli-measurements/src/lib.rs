//! Multi-qubit Pauli observables and a shot-limited measurement simulator.
//!
//! [`PauliBasis`] enumerates the d²−1 non-identity tensor-product Pauli
//! words for m qubits in a fixed lexicographic order, with the ±1
//! eigenprojectors of every word cached. [`sample_measurement`] draws
//! empirical averages with exact binomial shot statistics (or returns the
//! Born-rule value exactly with unlimited shots). [`RandomSource`] is a
//! seeded counter-based generator so every trial is replayable, and
//! [`random_density_matrix`] draws Ginibre-ensemble states from it.
//!
//! The basis is immutable once built and can be shared across workers;
//! [`RunningAverageTable`] and [`RandomSource`] are single-owner values.

#![forbid(unsafe_code)]

mod basis;
mod error;
mod one_design;
mod random;
mod running_average;
mod sampling;

pub use basis::{eigen_projectors, PauliBasis};
pub use error::Error;
pub use one_design::{swap_operator, verify_one_design, OneDesignReport};
pub use random::{random_density_matrix, RandomSource, GENERATOR_NAME};
pub use running_average::RunningAverageTable;
pub use sampling::{expected_value, sample_measurement, MeasurementRecord, Shots};

pub type Result<T> = std::result::Result<T, Error>;
