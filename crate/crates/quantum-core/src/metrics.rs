use crate::{DensityMatrix, Error, HermitianMatrix, Result};

/// Default clamp for near-zero eigenvalues inside logarithms.
///
/// Small enough that clamping never perturbs a genuinely full-rank state,
/// large enough to stay a normal f64.
pub const DEFAULT_EIGENVALUE_FLOOR: f64 = 1e-300;

/// Squared Frobenius distance `Σ |a_ij − b_ij|²`.
pub fn frobenius_sq_distance(a: &HermitianMatrix, b: &HermitianMatrix) -> Result<f64> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch(a.dim(), b.dim()));
    }
    Ok(a.data()
        .iter()
        .zip(b.data().iter())
        .map(|(x, y)| (x - y).norm_sqr())
        .sum())
}

/// Umegaki relative entropy `D(ρ‖σ) = tr(ρ log ρ − ρ log σ)`, with the
/// convention `0·log 0 = 0` on ρ's spectrum.
///
/// σ's eigenvalues are clamped at [`DEFAULT_EIGENVALUE_FLOOR`] before the
/// logarithm, so rank-deficient σ yields a finite value instead of +∞.
/// Since clamping raises `log σ` eigenvalues from −∞, the clamped result
/// is a finite stand-in that can only under-state `−tr(ρ log σ)`; for σ
/// supported on ρ's support it upper-bounds the true divergence restricted
/// to that support.
pub fn relative_entropy(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    if rho.dim() != sigma.dim() {
        return Err(Error::DimensionMismatch(rho.dim(), sigma.dim()));
    }
    let rho_eig = rho.as_hermitian().eigendecompose();
    // tr(ρ log ρ) from ρ's own spectrum; negatives within tolerance count as 0.
    let entropy_term: f64 = rho_eig
        .eigenvalues
        .iter()
        .map(|&l| if l > 0.0 { l * l.ln() } else { 0.0 })
        .sum();

    // tr(ρ log σ) = Σ_j log(μ_j) ⟨v_j|ρ|v_j⟩ over σ's eigenbasis.
    let sigma_eig = sigma.as_hermitian().eigendecompose();
    let mut cross_term = 0.0;
    for (j, &mu) in sigma_eig.eigenvalues.iter().enumerate() {
        let v = sigma_eig.eigenvectors.column(j);
        let rv = rho.as_hermitian().data() * v;
        let weight = v.dotc(&rv).re.max(0.0);
        cross_term += mu.max(DEFAULT_EIGENVALUE_FLOOR).ln() * weight;
    }
    Ok(entropy_term - cross_term)
}

/// `1 − (tr|√ρ √σ|)²`, the infidelity; 0 iff the states coincide, 1 for
/// orthogonal pure states. The trace norm is the sum of singular values
/// of `√ρ·√σ`.
pub fn infidelity(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    if rho.dim() != sigma.dim() {
        return Err(Error::DimensionMismatch(rho.dim(), sigma.dim()));
    }
    let sqrt_rho = psd_sqrt(rho.as_hermitian());
    let sqrt_sigma = psd_sqrt(sigma.as_hermitian());
    let product = sqrt_rho.data() * sqrt_sigma.data();
    let singular_values = product.svd(false, false).singular_values;
    let trace_norm: f64 = singular_values.iter().sum();
    Ok((1.0 - trace_norm * trace_norm).clamp(0.0, 1.0))
}

fn psd_sqrt(h: &HermitianMatrix) -> HermitianMatrix {
    h.eigendecompose().rebuild_with(|l| l.max(0.0).sqrt())
}
