use quantum_core::{relative_entropy, DensityMatrix, HermitianMatrix, DEFAULT_EIGENVALUE_FLOOR};

use crate::{BoundReport, Error, Result};

const SPECTRUM_SLACK: f64 = 1e-10;

fn spectrum_bounds(h: &HermitianMatrix) -> (f64, f64) {
    let eig = h.eigendecompose();
    (eig.eigenvalues[0], *eig.eigenvalues.last().unwrap())
}

fn require_observable(x: &HermitianMatrix) -> Result<()> {
    let (min, max) = spectrum_bounds(x);
    if min < -1.0 - SPECTRUM_SLACK || max > 1.0 + SPECTRUM_SLACK {
        return Err(Error::ObservableOutOfRange { min, max });
    }
    Ok(())
}

/// Overflow-safe `log tr exp(H)` via log-sum-exp on the spectrum.
fn log_trace_exp(h: &HermitianMatrix) -> f64 {
    let eig = h.eigendecompose();
    let max = *eig.eigenvalues.last().unwrap();
    let sum: f64 = eig.eigenvalues.iter().map(|&l| (l - max).exp()).sum();
    max + sum.ln()
}

/// Normalization-constant bound: for `−I ≤ X ≤ I` and positive definite ρ̂,
/// `log tr exp(log ρ̂ + δX) ≤ δ²/2 + δ·tr(ρ̂X)`.
pub fn check_normalization_bound(
    rho_hat: &DensityMatrix,
    x: &HermitianMatrix,
    delta_t: f64,
    tolerance: f64,
) -> Result<BoundReport> {
    require_observable(x)?;
    let min_eig = rho_hat.as_hermitian().eigendecompose().eigenvalues[0];
    if min_eig <= 0.0 {
        return Err(Error::NotPositiveDefinite(min_eig));
    }
    let log_rho = rho_hat.as_hermitian().matrix_log(DEFAULT_EIGENVALUE_FLOOR)?;
    let mut shifted = log_rho;
    shifted.add_scaled_assign(delta_t, x);
    let lhs = log_trace_exp(&shifted);
    let rhs = delta_t * delta_t / 2.0 + delta_t * x.trace_product(rho_hat.as_hermitian());
    Ok(BoundReport::evaluate(lhs, rhs, tolerance))
}

/// The exact log-domain successor of `rho_hat` under one exponentiated
/// gradient step on `(x, y_hat)` with rate `eta`:
/// `normalize_exp(log ρ̂ + δX)` with `δ = −2η(tr(ρ̂X) − ŷ)`.
pub fn meg_successor(
    rho_hat: &DensityMatrix,
    x: &HermitianMatrix,
    y_hat: f64,
    eta: f64,
) -> Result<DensityMatrix> {
    let min_eig = rho_hat.as_hermitian().eigendecompose().eigenvalues[0];
    if min_eig <= 0.0 {
        return Err(Error::NotPositiveDefinite(min_eig));
    }
    let delta = -2.0 * eta * (x.trace_product(rho_hat.as_hermitian()) - y_hat);
    let mut g = rho_hat.as_hermitian().matrix_log(DEFAULT_EIGENVALUE_FLOOR)?;
    g.add_scaled_assign(delta, x);
    Ok(g.normalize_exp())
}

/// Per-step progress bound: for `0 < η < ½` and any state σ,
/// `ηL_t(ρ̂_t) − (η/(1−2η))L_t(σ) ≤ D(σ‖ρ̂_t) − D(σ‖ρ̂_{t+1})`,
/// where `ρ̂_{t+1}` must be the actual successor of `ρ̂_t` under `(x, ŷ, η)`.
#[allow(clippy::too_many_arguments)]
pub fn check_progress_bound(
    rho_t: &DensityMatrix,
    rho_next: &DensityMatrix,
    sigma: &DensityMatrix,
    x: &HermitianMatrix,
    y_hat: f64,
    eta: f64,
    tolerance: f64,
) -> Result<BoundReport> {
    if !(eta > 0.0 && eta < 0.5) {
        return Err(Error::InvalidParams(format!(
            "learning rate must satisfy 0 < eta < 1/2 (got {eta})"
        )));
    }
    require_observable(x)?;
    let loss = |state: &DensityMatrix| {
        let r = x.trace_product(state.as_hermitian()) - y_hat;
        r * r
    };
    let lhs = eta * loss(rho_t) - eta / (1.0 - 2.0 * eta) * loss(sigma);
    let rhs = relative_entropy(sigma, rho_t)? - relative_entropy(sigma, rho_next)?;
    Ok(BoundReport::evaluate(lhs, rhs, tolerance))
}

/// `tr exp(A+B) ≤ tr(exp(A)exp(B))` for Hermitian A, B.
pub fn check_golden_thompson(
    a: &HermitianMatrix,
    b: &HermitianMatrix,
    tolerance: f64,
) -> Result<BoundReport> {
    if a.dim() != b.dim() {
        return Err(Error::Core(quantum_core::Error::DimensionMismatch(
            a.dim(),
            b.dim(),
        )));
    }
    let sum = a + b;
    let lhs = sum.matrix_exp().trace();
    let rhs = (a.matrix_exp().data() * b.matrix_exp().data()).trace().re;
    Ok(BoundReport::evaluate(lhs, rhs, tolerance))
}

/// Operator Jensen: for `0 ≤ A ≤ I` and `x, y ≥ 0`,
/// `exp(xA + y(I−A)) ≤ exp(x)A + exp(y)(I−A)` in the PSD order.
///
/// The report stores the minimum eigenvalue of (rhs − lhs) in `rhs` (with
/// `lhs = 0`), so `satisfied ⟺ λ_min ≥ −tolerance`.
pub fn check_operator_jensen(
    a: &HermitianMatrix,
    x: f64,
    y: f64,
    tolerance: f64,
) -> Result<BoundReport> {
    let (min, max) = spectrum_bounds(a);
    if min < -SPECTRUM_SLACK || max > 1.0 + SPECTRUM_SLACK {
        return Err(Error::ContractionOutOfRange { min, max });
    }
    if x < 0.0 || y < 0.0 {
        return Err(Error::InvalidParams(format!(
            "exponents must be non-negative (got x = {x}, y = {y})"
        )));
    }
    let d = a.dim();
    let identity = HermitianMatrix::identity(d);

    let mut exponent = identity.scale(y);
    exponent.add_scaled_assign(x - y, a);
    let lhs_matrix = exponent.matrix_exp();

    let mut rhs_matrix = identity.scale(y.exp());
    rhs_matrix.add_scaled_assign(x.exp() - y.exp(), a);

    let difference = &rhs_matrix - &lhs_matrix;
    let min_eigenvalue = difference.eigendecompose().eigenvalues[0];
    Ok(BoundReport::evaluate(0.0, min_eigenvalue, tolerance))
}

/// Scalar inequality `log(1 − q(1 − e^p)) ≤ pq + p²/8` for `q ∈ [0, 1]`.
///
/// A non-positive log argument is a domain violation (reported as an
/// error), not a falsified bound.
pub fn check_scalar_log_inequality(p: f64, q: f64, tolerance: f64) -> Result<BoundReport> {
    if !(0.0..=1.0).contains(&q) {
        return Err(Error::WeightOutOfRange(q));
    }
    let argument = 1.0 - q * (1.0 - p.exp());
    if argument <= 0.0 {
        return Err(Error::LogDomainViolation(argument));
    }
    let lhs = argument.ln();
    let rhs = p * q + p * p / 8.0;
    Ok(BoundReport::evaluate(lhs, rhs, tolerance))
}
