use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::{DensityMatrix, Error, HermitianMatrix, Result, PSD_TOLERANCE};

/// Spectral decomposition `H = V diag(λ) V†` with eigenvalues ascending and
/// eigenvectors as the columns of a unitary matrix.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: DMatrix<Complex64>,
}

impl EigenDecomposition {
    /// Rebuild `V diag(f(λ)) V†` for a real function `f` of the spectrum.
    pub fn rebuild_with(&self, f: impl Fn(f64) -> f64) -> HermitianMatrix {
        let mapped: Vec<f64> = self.eigenvalues.iter().map(|&l| f(l)).collect();
        self.rebuild_from_spectrum(&mapped)
    }

    /// Rebuild `V diag(values) V†` from an explicit replacement spectrum.
    pub fn rebuild_from_spectrum(&self, values: &[f64]) -> HermitianMatrix {
        let n = self.eigenvalues.len();
        assert_eq!(values.len(), n, "one value per eigenvector column");
        let mut scaled = self.eigenvectors.clone();
        for (j, &v) in values.iter().enumerate() {
            let w = Complex64::new(v, 0.0);
            for i in 0..n {
                scaled[(i, j)] *= w;
            }
        }
        HermitianMatrix::symmetrized(scaled * self.eigenvectors.adjoint())
    }
}

impl HermitianMatrix {
    /// Full spectral decomposition, eigenvalues sorted ascending.
    pub fn eigendecompose(&self) -> EigenDecomposition {
        let eig = self.data().clone().symmetric_eigen();
        let n = eig.eigenvalues.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));

        let eigenvalues: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
        let mut eigenvectors = DMatrix::zeros(n, n);
        for (dst, &src) in order.iter().enumerate() {
            eigenvectors.set_column(dst, &eig.eigenvectors.column(src));
        }
        EigenDecomposition {
            eigenvalues,
            eigenvectors,
        }
    }

    /// `exp(H) = V diag(e^λ) V†`; positive definite for any Hermitian input.
    pub fn matrix_exp(&self) -> HermitianMatrix {
        self.eigendecompose().rebuild_with(f64::exp)
    }

    /// `log(P)` for PSD `P`, clamping eigenvalues below `eigenvalue_floor`
    /// to the floor before taking logarithms.
    ///
    /// Rejects inputs with an eigenvalue below −[`PSD_TOLERANCE`].
    pub fn matrix_log(&self, eigenvalue_floor: f64) -> Result<HermitianMatrix> {
        let eig = self.eigendecompose();
        let min = eig.eigenvalues[0];
        if min < -PSD_TOLERANCE {
            return Err(Error::NotPositiveSemidefinite(min));
        }
        Ok(eig.rebuild_with(|l| l.max(eigenvalue_floor).ln()))
    }

    /// `exp(G)/tr(exp(G))`, computed as `exp(G − λ_max I)/tr(exp(G − λ_max I))`.
    ///
    /// The shift leaves the value unchanged but keeps every exponential in
    /// `(0, 1]`, so the normalization stays finite for arbitrarily large
    /// `‖G‖`. The output is PSD with unit trace by construction.
    pub fn normalize_exp(&self) -> DensityMatrix {
        let eig = self.eigendecompose();
        let lambda_max = *eig
            .eigenvalues
            .last()
            .expect("HermitianMatrix is non-empty");
        let weights: Vec<f64> = eig
            .eigenvalues
            .iter()
            .map(|&l| (l - lambda_max).exp())
            .collect();
        let total: f64 = weights.iter().sum();
        let normalized = eig.rebuild_with(|l| (l - lambda_max).exp() / total);
        DensityMatrix::from_hermitian_unchecked(normalized)
    }
}
