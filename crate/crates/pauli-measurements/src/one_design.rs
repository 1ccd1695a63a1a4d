use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::PauliBasis;

/// The swap operator `P₂₁ = Σ_{ij} |i⟩⟨j| ⊗ |j⟩⟨i|` on the doubled space,
/// satisfying `tr(MN) = tr((M⊗N)P₂₁)`.
pub fn swap_operator(dim: usize) -> DMatrix<Complex64> {
    let mut p = DMatrix::zeros(dim * dim, dim * dim);
    for i in 0..dim {
        for j in 0..dim {
            p[(i * dim + j, j * dim + i)] = Complex64::new(1.0, 0.0);
        }
    }
    p
}

/// Residuals of the two exact averaging identities the Pauli set satisfies.
#[derive(Debug, Clone, Copy)]
pub struct OneDesignReport {
    /// Max entrywise residual of `(1/d) Σ_i U_i ⊗ U_i† = P₂₁` over the full
    /// set of d² words including identity.
    pub swap_identity_residual: f64,
    /// Max entrywise residual of the mean of `X ⊗ X` over the d²−1
    /// non-identity words against `(d/(d²−1)) P₂₁ − (1/(d²−1)) I⊗I`.
    pub centered_average_residual: f64,
}

impl OneDesignReport {
    pub fn max_residual(&self) -> f64 {
        self.swap_identity_residual.max(self.centered_average_residual)
    }
}

fn max_entry_diff(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// Evaluate both averaging identities by direct summation over the basis.
///
/// Works on the d²×d² doubled space, so this is a diagnostic for small
/// qubit counts (m ≤ 4).
pub fn verify_one_design(basis: &PauliBasis) -> OneDesignReport {
    let d = basis.dim();
    let dd = d * d;
    let identity = DMatrix::<Complex64>::identity(d, d);
    let swap = swap_operator(d);

    // Full set including the identity word: (1/d) Σ U ⊗ U†.
    let mut full_sum = identity.kronecker(&identity.adjoint());
    for x in basis.observables() {
        full_sum += x.data().kronecker(&x.data().adjoint());
    }
    full_sum /= Complex64::new(d as f64, 0.0);
    let swap_identity_residual = max_entry_diff(&full_sum, &swap);

    // Mean of X ⊗ X over the non-identity words.
    let mut pair_sum = DMatrix::<Complex64>::zeros(dd, dd);
    for x in basis.observables() {
        pair_sum += x.data().kronecker(x.data());
    }
    pair_sum /= Complex64::new(basis.len() as f64, 0.0);
    let count = basis.len() as f64;
    let expected = &swap * Complex64::new(d as f64 / count, 0.0)
        - identity.kronecker(&identity) * Complex64::new(1.0 / count, 0.0);
    let centered_average_residual = max_entry_diff(&pair_sum, &expected);

    OneDesignReport {
        swap_identity_residual,
        centered_average_residual,
    }
}
