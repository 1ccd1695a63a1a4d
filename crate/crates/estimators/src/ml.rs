use pauli_measurements::{MeasurementRecord, PauliBasis};
use quantum_core::{DensityMatrix, HermitianMatrix};

use crate::{Error, Result};

const PROBABILITY_CLAMP: f64 = 1e-14;

/// Diluted maximum-likelihood estimator over the normalized Pauli POVM
/// `{Π↑/(d²−1), Π↓/(d²−1)}`.
///
/// Keeps per-projector outcome tallies for the whole history. Each new
/// record adds its counts and then re-runs `inner_iterations` diluted
/// steps `ρ̂ ← (I+εR)ρ̂(I+εR)/norm` from the previous estimate, with
/// `R = Σ_j (f_j/tr(ρ̂E_j)) E_j` the likelihood gradient. Every inner
/// iteration computes the full POVM probability vector, which is the
/// O(d⁴) bottleneck.
#[derive(Debug, Clone)]
pub struct MlState {
    up_counts: Vec<u64>,
    down_counts: Vec<u64>,
    total: u64,
    epsilon: f64,
    inner_iterations: usize,
    rho_hat: DensityMatrix,
    clamp_warnings: u64,
}

impl MlState {
    pub fn new(basis: &PauliBasis, epsilon: f64, inner_iterations: usize) -> Result<Self> {
        if !(epsilon >= 0.0 && epsilon.is_finite()) {
            return Err(Error::InvalidDilution(epsilon));
        }
        if inner_iterations == 0 {
            return Err(Error::ZeroInnerIterations);
        }
        Ok(Self {
            up_counts: vec![0; basis.len()],
            down_counts: vec![0; basis.len()],
            total: 0,
            epsilon,
            inner_iterations,
            rho_hat: DensityMatrix::maximally_mixed(basis.dim()),
            clamp_warnings: 0,
        })
    }

    /// Add a record's outcome counts to the frequency table without
    /// refining the estimate. Requires a finite shot count.
    pub fn ingest(&mut self, basis: &PauliBasis, record: &MeasurementRecord) -> Result<()> {
        basis.observable(record.observable_index)?;
        let (Some(n_up), pauli_measurements::Shots::Finite(n)) =
            (record.up_count(), record.shots)
        else {
            return Err(Error::InfiniteShotsForMl);
        };
        self.up_counts[record.observable_index] += n_up;
        self.down_counts[record.observable_index] += n - n_up;
        self.total += n;
        Ok(())
    }

    /// One diluted iteration from the current estimate against the current
    /// frequency table. No-op until counts exist.
    pub fn refine(&mut self, basis: &PauliBasis) -> Result<()> {
        if self.total == 0 {
            return Ok(());
        }
        let d = basis.dim();
        if d != self.rho_hat.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.rho_hat.dim(),
                got: d,
            });
        }
        let l = basis.len() as f64;
        let total = self.total as f64;

        // R = Σ_j (f_j / tr(ρ̂E_j)) E_j over the normalized POVM E_j = Π_j/L.
        // The whole probability vector is computed every iteration.
        let mut r = HermitianMatrix::zeros(d);
        for (i, (up, down)) in basis.projector_pairs().iter().enumerate() {
            let p_up = up.trace_product(self.rho_hat.as_hermitian()) / l;
            let p_down = down.trace_product(self.rho_hat.as_hermitian()) / l;

            let f_up = self.up_counts[i] as f64 / total;
            if f_up > 0.0 {
                let denom = if p_up < PROBABILITY_CLAMP {
                    self.clamp_warnings += 1;
                    PROBABILITY_CLAMP
                } else {
                    p_up
                };
                r.add_scaled_assign(f_up / (denom * l), up);
            }
            let f_down = self.down_counts[i] as f64 / total;
            if f_down > 0.0 {
                let denom = if p_down < PROBABILITY_CLAMP {
                    self.clamp_warnings += 1;
                    PROBABILITY_CLAMP
                } else {
                    p_down
                };
                r.add_scaled_assign(f_down / (denom * l), down);
            }
        }

        // ρ̂ ← (I+εR) ρ̂ (I+εR), renormalized.
        let mut dilution = HermitianMatrix::identity(d);
        dilution.add_scaled_assign(self.epsilon, &r);
        let product = dilution.data() * self.rho_hat.as_hermitian().data() * dilution.data();
        let mut next = HermitianMatrix::symmetrized(product);
        let trace = next.trace();
        next = next.scale(1.0 / trace);
        self.rho_hat = DensityMatrix::from_hermitian_unchecked(next);
        Ok(())
    }

    /// Ingest one record, then run the configured number of diluted
    /// iterations from the previous estimate.
    pub fn update(&mut self, basis: &PauliBasis, record: &MeasurementRecord) -> Result<()> {
        self.ingest(basis, record)?;
        for _ in 0..self.inner_iterations {
            self.refine(basis)?;
        }
        Ok(())
    }

    /// Batch log-likelihood of the current estimate,
    /// `Σ_j f_j log tr(ρ̂E_j)` over observed POVM outcomes.
    pub fn log_likelihood(&self, basis: &PauliBasis) -> f64 {
        if self.total == 0 {
            return 0.0;
        }
        let l = basis.len() as f64;
        let total = self.total as f64;
        let mut acc = 0.0;
        for (i, (up, down)) in basis.projector_pairs().iter().enumerate() {
            if self.up_counts[i] > 0 {
                let p = (up.trace_product(self.rho_hat.as_hermitian()) / l).max(PROBABILITY_CLAMP);
                acc += self.up_counts[i] as f64 / total * p.ln();
            }
            if self.down_counts[i] > 0 {
                let p =
                    (down.trace_product(self.rho_hat.as_hermitian()) / l).max(PROBABILITY_CLAMP);
                acc += self.down_counts[i] as f64 / total * p.ln();
            }
        }
        acc
    }

    pub fn estimate(&self) -> DensityMatrix {
        self.rho_hat.clone()
    }

    /// Relative frequency of each POVM element (up projectors first is not
    /// the layout here — this returns per-observable (f↑, f↓) pairs).
    pub fn frequencies(&self) -> Vec<(f64, f64)> {
        if self.total == 0 {
            return vec![(0.0, 0.0); self.up_counts.len()];
        }
        let total = self.total as f64;
        self.up_counts
            .iter()
            .zip(&self.down_counts)
            .map(|(&u, &d)| (u as f64 / total, d as f64 / total))
            .collect()
    }

    /// Number of times a near-zero POVM probability had to be clamped while
    /// its observed frequency was positive.
    pub fn clamp_warnings(&self) -> u64 {
        self.clamp_warnings
    }

    pub fn total_counts(&self) -> u64 {
        self.total
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use pauli_measurements::Shots;

    fn record_with_counts(index: usize, n_up: u64, n: u64, t: u64) -> MeasurementRecord {
        MeasurementRecord {
            observable_index: index,
            y_hat: (2.0 * n_up as f64 - n as f64) / n as f64,
            shots: Shots::Finite(n),
            t,
        }
    }

    #[test]
    fn fresh_state_is_maximally_mixed() {
        let basis = PauliBasis::new(1).unwrap();
        let ml = MlState::new(&basis, 0.1, 10).unwrap();
        let expected = DensityMatrix::maximally_mixed(2);
        assert!(ml.estimate().as_hermitian().max_abs_diff(expected.as_hermitian()) < 1e-14);
    }

    #[test]
    fn born_matched_frequencies_are_a_fixed_point() {
        // equal up/down tallies per observable match tr((I/d)E_j) exactly,
        // so R = I and the diluted step leaves the estimate untouched
        let basis = PauliBasis::new(2).unwrap();
        let mut ml = MlState::new(&basis, 0.1, 3).unwrap();
        let mixed = DensityMatrix::maximally_mixed(4);
        for i in 0..basis.len() {
            ml.update(&basis, &record_with_counts(i, 50, 100, i as u64 + 1)).unwrap();
            assert!(
                ml.estimate().as_hermitian().max_abs_diff(mixed.as_hermitian()) < 1e-12,
                "drifted after observable {i}"
            );
        }
        let f = ml.frequencies();
        let expected = 1.0 / (2.0 * basis.len() as f64);
        for (fu, fd) in f {
            assert!((fu - expected).abs() < 1e-15);
            assert!((fd - expected).abs() < 1e-15);
        }
    }

    #[test]
    fn frequencies_sum_to_one() {
        let basis = PauliBasis::new(1).unwrap();
        let mut ml = MlState::new(&basis, 0.1, 2).unwrap();
        ml.update(&basis, &record_with_counts(0, 7, 10, 1)).unwrap();
        ml.update(&basis, &record_with_counts(2, 1, 10, 2)).unwrap();
        let sum: f64 = ml.frequencies().iter().map(|(u, d)| u + d).sum();
        assert!((sum - 1.0).abs() < 1e-12);
    }

    #[test]
    fn zero_dilution_never_moves() {
        let basis = PauliBasis::new(1).unwrap();
        let mut ml = MlState::new(&basis, 0.0, 10).unwrap();
        let before = ml.estimate();
        for t in 1..=20 {
            ml.update(&basis, &record_with_counts(t % 3, 9, 10, t as u64)).unwrap();
        }
        assert!(ml.estimate().as_hermitian().max_abs_diff(before.as_hermitian()) < 1e-12);
    }

    #[test]
    fn estimate_stays_physical() {
        let basis = PauliBasis::new(1).unwrap();
        let mut ml = MlState::new(&basis, 0.1, 5).unwrap();
        for t in 1..=30u64 {
            ml.update(&basis, &record_with_counts((t % 3) as usize, 10, 10, t)).unwrap();
            let rho = ml.estimate();
            assert!((rho.as_hermitian().trace() - 1.0).abs() < 1e-10);
            let min = rho.as_hermitian().eigendecompose().eigenvalues[0];
            assert!(min >= -1e-10);
        }
    }

    #[test]
    fn rejects_infinite_shots() {
        let basis = PauliBasis::new(1).unwrap();
        let mut ml = MlState::new(&basis, 0.1, 10).unwrap();
        let rec = MeasurementRecord {
            observable_index: 0,
            y_hat: 0.5,
            shots: Shots::Infinite,
            t: 1,
        };
        assert!(matches!(ml.update(&basis, &rec), Err(Error::InfiniteShotsForMl)));
    }

    #[test]
    fn parameter_validation() {
        let basis = PauliBasis::new(1).unwrap();
        assert!(matches!(
            MlState::new(&basis, -0.1, 10),
            Err(Error::InvalidDilution(_))
        ));
        assert!(matches!(
            MlState::new(&basis, 0.1, 0),
            Err(Error::ZeroInnerIterations)
        ));
    }
}
