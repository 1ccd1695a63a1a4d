use nalgebra::{DMatrix, DVector};
use pauli_measurements::{MeasurementRecord, PauliBasis};
use quantum_core::{project_to_physical, DensityMatrix, HermitianMatrix};

use crate::{Error, Result};

const RANK_TOLERANCE: f64 = 1e-6;
/// Literal dense-trace design construction is O(d⁶); above this qubit
/// count the same entries come from the Pauli trace orthogonality
/// identity instead (the two agree to 1e-12, see tests).
const LITERAL_DESIGN_MAX_QUBITS: usize = 4;

/// Online least-squares estimator against the fixed Pauli projector set.
///
/// The design matrix `X[j,i] = tr(Π_j U_i)` (rows: all up projectors in
/// basis order, then all down projectors) never changes, so its
/// pseudoinverse `(XᵀX)⁻¹Xᵀ` is realized once at construction. Each record
/// updates the per-observable probability estimate, rebuilds the dependent
/// vector `Y_j = p̂_j − 1/d` (zero rows for not-yet-measured observables,
/// which shrinks their components toward the maximally mixed state),
/// solves `θ̂ = pinv·Y`, reconstructs `I/d + Σθ̂ᵢUᵢ`, and projects back to
/// the physical set. The solve and the reconstruction are each O(d⁴) per
/// record.
#[derive(Debug, Clone)]
pub struct LsState {
    pseudo_inverse: DMatrix<f64>,
    up_counts: Vec<u64>,
    up_means: Vec<f64>,
    scratch_y: DVector<f64>,
    rho_hat: DensityMatrix,
}

impl LsState {
    pub fn new(basis: &PauliBasis) -> Result<Self> {
        let pseudo_inverse = if basis.num_qubits() <= LITERAL_DESIGN_MAX_QUBITS {
            literal_pseudo_inverse(basis)?
        } else {
            analytic_pseudo_inverse(basis)?
        };
        let l = basis.len();
        Ok(Self {
            pseudo_inverse,
            up_counts: vec![0; l],
            up_means: vec![0.0; l],
            scratch_y: DVector::zeros(2 * l),
            rho_hat: DensityMatrix::maximally_mixed(basis.dim()),
        })
    }

    pub fn update(&mut self, basis: &PauliBasis, record: &MeasurementRecord) -> Result<()> {
        let i = record.observable_index;
        basis.observable(i)?;
        // running mean of the up-probability estimate (1+ŷ)/2
        self.up_counts[i] += 1;
        let n = self.up_counts[i] as f64;
        let p_up = (1.0 + record.y_hat) / 2.0;
        self.up_means[i] += (p_up - self.up_means[i]) / n;

        let l = basis.len();
        let d_inv = 1.0 / basis.dim() as f64;
        for j in 0..l {
            if self.up_counts[j] > 0 {
                self.scratch_y[j] = self.up_means[j] - d_inv;
                self.scratch_y[l + j] = (1.0 - self.up_means[j]) - d_inv;
            } else {
                self.scratch_y[j] = 0.0;
                self.scratch_y[l + j] = 0.0;
            }
        }

        let theta = &self.pseudo_inverse * &self.scratch_y;
        let mut reconstruction = HermitianMatrix::identity(basis.dim()).scale(d_inv);
        for (idx, x) in basis.observables().iter().enumerate() {
            reconstruction.add_scaled_assign(theta[idx], x);
        }
        debug_assert!((reconstruction.trace() - 1.0).abs() < 1e-12);
        self.rho_hat = project_to_physical(&reconstruction);
        Ok(())
    }

    pub fn estimate(&self) -> DensityMatrix {
        self.rho_hat.clone()
    }

    pub fn design_pseudo_inverse(&self) -> &DMatrix<f64> {
        &self.pseudo_inverse
    }
}

/// Design matrix from literal dense traces.
fn literal_design(basis: &PauliBasis) -> DMatrix<f64> {
    let l = basis.len();
    let mut design = DMatrix::zeros(2 * l, l);
    for (col, u) in basis.observables().iter().enumerate() {
        for (row, (up, down)) in basis.projector_pairs().iter().enumerate() {
            design[(row, col)] = up.trace_product(u);
            design[(l + row, col)] = down.trace_product(u);
        }
    }
    design
}

fn literal_pseudo_inverse(basis: &PauliBasis) -> Result<DMatrix<f64>> {
    let design = literal_design(basis);
    let svd = design.svd(true, true);
    let min_singular = svd
        .singular_values
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min);
    if min_singular <= RANK_TOLERANCE {
        return Err(Error::DesignRankDeficient(min_singular));
    }
    svd.pseudo_inverse(RANK_TOLERANCE)
        .map_err(|_| Error::DesignRankDeficient(min_singular))
}

/// The same pseudoinverse from `tr(X_i X_j) = d·δ_ij`: design entries are
/// `±(d/2)δ_ij`, so `XᵀX = (d²/2)I` and `pinv = (2/d²)Xᵀ` has entries
/// `±δ_ij/d`. Full column rank is certified by probing the trace
/// orthogonality of randomly chosen observable pairs.
fn analytic_pseudo_inverse(basis: &PauliBasis) -> Result<DMatrix<f64>> {
    let l = basis.len();
    let d = basis.dim() as f64;

    let mut state = 0x9E3779B97F4A7C15u64;
    let mut next_index = |n: usize| {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        (state % n as u64) as usize
    };
    for probe in 0..256 {
        let i = next_index(l);
        let j = if probe % 4 == 0 { i } else { next_index(l) };
        let overlap = basis.observables()[i].trace_product(&basis.observables()[j]) / d;
        let expected = if i == j { 1.0 } else { 0.0 };
        if (overlap - expected).abs() > 1e-10 {
            return Err(Error::DesignRankDeficient(overlap));
        }
    }

    let mut pinv = DMatrix::zeros(l, 2 * l);
    for i in 0..l {
        pinv[(i, i)] = 1.0 / d;
        pinv[(i, l + i)] = -1.0 / d;
    }
    Ok(pinv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use pauli_measurements::{expected_value, Shots};

    fn noiseless_record(basis: &PauliBasis, rho: &DensityMatrix, i: usize, t: u64) -> MeasurementRecord {
        MeasurementRecord {
            observable_index: i,
            y_hat: expected_value(rho, basis.observable(i).unwrap()),
            shots: Shots::Infinite,
            t,
        }
    }

    #[test]
    fn literal_and_analytic_pseudo_inverses_agree() {
        for m in 1..=3 {
            let basis = PauliBasis::new(m).unwrap();
            let literal = literal_pseudo_inverse(&basis).unwrap();
            let analytic = analytic_pseudo_inverse(&basis).unwrap();
            let diff = (&literal - &analytic).amax();
            assert!(diff < 1e-12, "m={m}: max diff {diff}");
        }
    }

    #[test]
    fn design_has_full_column_rank() {
        for m in 1..=2 {
            let basis = PauliBasis::new(m).unwrap();
            let design = literal_design(&basis);
            let rank = design.svd(false, false).rank(1e-9);
            assert_eq!(rank, basis.len());
        }
    }

    #[test]
    fn fresh_state_is_maximally_mixed() {
        let basis = PauliBasis::new(1).unwrap();
        let ls = LsState::new(&basis).unwrap();
        let expected = DensityMatrix::maximally_mixed(2);
        assert!(ls.estimate().as_hermitian().max_abs_diff(expected.as_hermitian()) < 1e-14);
    }

    #[test]
    fn exact_recovery_from_complete_noiseless_data() {
        let basis = PauliBasis::new(1).unwrap();
        let mut rng = pauli_measurements::RandomSource::new(42);
        let rho = pauli_measurements::random_density_matrix(2, None, &mut rng).unwrap();
        let mut ls = LsState::new(&basis).unwrap();
        for i in 0..basis.len() {
            ls.update(&basis, &noiseless_record(&basis, &rho, i, i as u64 + 1)).unwrap();
        }
        let err = quantum_core::frobenius_sq_distance(
            ls.estimate().as_hermitian(),
            rho.as_hermitian(),
        )
        .unwrap();
        assert!(err < 1e-18, "squared error {err}");
    }

    #[test]
    fn partial_data_shrinks_toward_mixed() {
        // only Z measured: X/Y components must stay zero
        let basis = PauliBasis::new(1).unwrap();
        let rho = DensityMatrix::new(HermitianMatrix::from_real_diagonal(&[0.9, 0.1])).unwrap();
        let mut ls = LsState::new(&basis).unwrap();
        ls.update(&basis, &noiseless_record(&basis, &rho, 2, 1)).unwrap();
        let estimate = ls.estimate();
        for i in [0usize, 1] {
            let component = expected_value(&estimate, basis.observable(i).unwrap());
            assert!(component.abs() < 1e-12);
        }
        let z_component = expected_value(&estimate, basis.observable(2).unwrap());
        assert!((z_component - 0.8).abs() < 1e-12);
    }

    #[test]
    fn estimate_always_physical() {
        let basis = PauliBasis::new(1).unwrap();
        let mut ls = LsState::new(&basis).unwrap();
        // deliberately contradictory extreme outcomes drive the linear
        // inversion out of the PSD cone; projection must repair it
        for (t, (i, y)) in [(0usize, 1.0), (1, 1.0), (2, 1.0), (0, -1.0)].iter().enumerate() {
            let rec = MeasurementRecord {
                observable_index: *i,
                y_hat: *y,
                shots: Shots::Finite(1),
                t: t as u64 + 1,
            };
            ls.update(&basis, &rec).unwrap();
            let rho = ls.estimate();
            assert!((rho.as_hermitian().trace() - 1.0).abs() < 1e-10);
            assert!(rho.as_hermitian().eigendecompose().eigenvalues[0] >= -1e-10);
        }
    }
}
