use pauli_measurements::{
    random_density_matrix, verify_one_design, PauliBasis, RandomSource, Shots,
};
use quantum_core::{relative_entropy, DensityMatrix, HermitianMatrix};

use crate::{
    check_golden_thompson, check_normalization_bound, check_operator_jensen,
    check_progress_bound, check_scalar_log_inequality, expected_loss_noiseless,
    expected_loss_noisy, expected_noise_variance, meg_successor, noiseless_convergence_horizon,
    noisy_convergence_horizon, riemann_zeta, Result, TheoryParams,
};

/// One row of the check suite.
///
/// For inequality rows `min_slack` is the worst `rhs − lhs` observed
/// (negative means a violation deeper than zero); for residual/identity
/// rows it is `tolerance − worst_residual`. Either way
/// `passed ⟺ violations == 0`.
#[derive(Debug, Clone)]
pub struct SuiteRow {
    pub check: &'static str,
    pub instances: u64,
    pub violations: u64,
    pub min_slack: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl SuiteRow {
    fn from_slacks(check: &'static str, slacks: &[f64], tolerance: f64) -> Self {
        let min_slack = slacks.iter().copied().fold(f64::INFINITY, f64::min);
        let violations = slacks.iter().filter(|&&s| s < -tolerance).count() as u64;
        Self {
            check,
            instances: slacks.len() as u64,
            violations,
            min_slack,
            tolerance,
            passed: violations == 0,
        }
    }

    fn from_residuals(check: &'static str, residuals: &[f64], tolerance: f64) -> Self {
        let worst = residuals.iter().copied().fold(0.0, f64::max);
        let violations = residuals.iter().filter(|&&r| r > tolerance).count() as u64;
        Self {
            check,
            instances: residuals.len() as u64,
            violations,
            min_slack: tolerance - worst,
            tolerance,
            passed: violations == 0,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Randomized instances per inequality family.
    pub instances: u64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            seed: 7,
            instances: 10_000,
        }
    }
}

fn random_hermitian(d: usize, scale: f64, rng: &mut RandomSource) -> HermitianMatrix {
    let g = nalgebra_free_from_fn(d, rng);
    HermitianMatrix::symmetrized(g).scale(scale)
}

fn nalgebra_free_from_fn(
    d: usize,
    rng: &mut RandomSource,
) -> nalgebra::DMatrix<num_complex::Complex64> {
    nalgebra::DMatrix::from_fn(d, d, |_, _| rng.complex_gaussian())
}

/// Run every check family and return the pass/fail table.
pub fn run_full_suite(config: &SuiteConfig) -> Result<Vec<SuiteRow>> {
    let mut rows = Vec::new();
    let mut rng = RandomSource::new(config.seed);
    let instances = config.instances.max(1);

    let basis_by_m: Vec<PauliBasis> = (1..=3)
        .map(PauliBasis::new)
        .collect::<pauli_measurements::Result<_>>()?;

    // -- normalization-constant bound, random (ρ̂, word, δ ∈ [−2, 2]) -----
    {
        let mut slacks = Vec::with_capacity(instances as usize);
        for i in 0..instances {
            let basis = &basis_by_m[(i % 3) as usize];
            let d = basis.dim();
            let rho = random_density_matrix(d, None, &mut rng)?;
            let x = basis.observable(rng.uniform_index(basis.len()))?;
            let delta = rng.uniform_f64() * 4.0 - 2.0;
            let report = check_normalization_bound(&rho, x, delta, 1e-10)?;
            slacks.push(report.slack);
        }
        rows.push(SuiteRow::from_slacks("normalization_bound", &slacks, 1e-10));
    }

    // -- per-step progress bound at η = 0.4, full-rank comparators --------
    {
        let mut slacks = Vec::with_capacity(instances as usize);
        for i in 0..instances {
            let basis = &basis_by_m[(i % 2) as usize];
            let d = basis.dim();
            let rho_t = random_density_matrix(d, None, &mut rng)?;
            let sigma = random_density_matrix(d, None, &mut rng)?;
            let x = basis.observable(rng.uniform_index(basis.len()))?;
            let y_hat = rng.uniform_f64() * 2.0 - 1.0;
            let eta = 0.4;
            let rho_next = meg_successor(&rho_t, x, y_hat, eta)?;
            let report =
                check_progress_bound(&rho_t, &rho_next, &sigma, x, y_hat, eta, 1e-9)?;
            slacks.push(report.slack);
        }
        rows.push(SuiteRow::from_slacks("progress_bound", &slacks, 1e-9));
    }

    // -- Golden–Thompson on random Hermitian pairs, d ≤ 8 -----------------
    {
        let mut slacks = Vec::with_capacity(instances as usize);
        for i in 0..instances {
            let d = [2usize, 4, 8][(i % 3) as usize];
            let a = random_hermitian(d, 1.0, &mut rng);
            let b = random_hermitian(d, 1.0, &mut rng);
            let report = check_golden_thompson(&a, &b, 1e-10)?;
            // normalize slack relative to the trace scale so huge traces
            // don't mask violations
            slacks.push(report.slack / report.rhs.abs().max(1.0));
        }
        rows.push(SuiteRow::from_slacks("golden_thompson", &slacks, 1e-10));
    }

    // -- operator Jensen on random contractions, x, y ∈ [0, 3] ------------
    {
        let mut slacks = Vec::with_capacity(instances as usize);
        for i in 0..instances {
            let d = [2usize, 4, 8][(i % 3) as usize];
            // (I + ρ_random)/2 style contractions have spectrum in [0, 1]
            let rho = random_density_matrix(d, None, &mut rng)?;
            let mut a = HermitianMatrix::identity(d).scale(0.5);
            a.add_scaled_assign(0.5, rho.as_hermitian());
            let x = rng.uniform_f64() * 3.0;
            let y = rng.uniform_f64() * 3.0;
            let report = check_operator_jensen(&a, x, y, 1e-10)?;
            slacks.push(report.rhs); // min eigenvalue of (rhs − lhs)
        }
        rows.push(SuiteRow::from_slacks("operator_jensen", &slacks, 1e-10));
    }

    // -- scalar log inequality on the dense grid --------------------------
    {
        let mut slacks = Vec::new();
        let mut p = -5.0f64;
        while p <= 5.0 + 1e-12 {
            let mut q = 0.0f64;
            while q <= 1.0 + 1e-12 {
                let report = check_scalar_log_inequality(p, q.min(1.0), 1e-12)?;
                slacks.push(report.slack);
                q += 0.01;
            }
            p += 0.01;
        }
        rows.push(SuiteRow::from_slacks("scalar_log_inequality", &slacks, 1e-12));
    }

    // -- exact averaging identities of the Pauli set ----------------------
    {
        let residuals: Vec<f64> = basis_by_m
            .iter()
            .map(|basis| verify_one_design(basis).max_residual())
            .collect();
        rows.push(SuiteRow::from_residuals("one_design_identities", &residuals, 1e-12));
    }

    // -- expected-loss/variance formulas vs enumeration over the basis ----
    {
        let mut loss_residuals = Vec::new();
        let mut variance_residuals = Vec::new();
        for basis in &basis_by_m[..2] {
            let d = basis.dim();
            for _ in 0..50 {
                let rho = random_density_matrix(d, None, &mut rng)?;
                let sigma = random_density_matrix(d, None, &mut rng)?;
                loss_residuals.push(
                    (enumerate_noiseless_loss(basis, &sigma, &rho)
                        - expected_loss_noiseless(&sigma, &rho)?)
                    .abs(),
                );
                for shots in [1u64, 100] {
                    variance_residuals.push(
                        (enumerate_noise_variance(basis, &rho, shots)
                            - expected_noise_variance(&rho, shots)?)
                        .abs(),
                    );
                }
            }
        }
        rows.push(SuiteRow::from_residuals("loss_enumeration", &loss_residuals, 1e-12));
        rows.push(SuiteRow::from_residuals(
            "variance_enumeration",
            &variance_residuals,
            1e-12,
        ));
    }

    // -- noisy expected loss vs Monte Carlo, 3-standard-error band --------
    {
        let samples = (instances * 100).clamp(100_000, 1_000_000);
        let mut slacks = Vec::new();
        let basis = &basis_by_m[0];
        for &shots in &[10u64, 1000] {
            let rho = random_density_matrix(2, None, &mut rng)?;
            let sigma = random_density_matrix(2, None, &mut rng)?;
            let predicted = expected_loss_noisy(&sigma, &rho, Shots::Finite(shots))?;
            let (mut sum, mut sum_sq) = (0.0f64, 0.0f64);
            for t in 0..samples {
                let index = rng.uniform_index(basis.len());
                let record = pauli_measurements::sample_measurement(
                    &rho,
                    basis,
                    index,
                    Shots::Finite(shots),
                    t,
                    &mut rng,
                )?;
                let r = basis
                    .observable(index)?
                    .trace_product(sigma.as_hermitian())
                    - record.y_hat;
                let loss = r * r;
                sum += loss;
                sum_sq += loss * loss;
            }
            let mean = sum / samples as f64;
            let var = (sum_sq / samples as f64 - mean * mean).max(0.0);
            let stderr = (var / samples as f64).sqrt();
            slacks.push(3.0 * stderr - (mean - predicted).abs());
        }
        rows.push(SuiteRow::from_slacks("noisy_loss_monte_carlo", &slacks, 0.0));
    }

    // -- zeta constants ----------------------------------------------------
    {
        let pi = std::f64::consts::PI;
        let residuals = vec![
            (riemann_zeta(2.0)? - pi * pi / 6.0).abs(),
            (riemann_zeta(4.0)? - pi.powi(4) / 90.0).abs(),
        ];
        rows.push(SuiteRow::from_residuals("zeta_constants", &residuals, 1e-10));
    }

    // -- horizon calculators: dual-path agreement --------------------------
    {
        let mut residuals = Vec::new();
        for &dim in &[2usize, 4, 8, 16, 32] {
            for &eta in &[0.05, 0.15, 0.25, 0.35, 0.45] {
                for &alpha in &[0.25, 0.5] {
                    for &delta in &[0.25, 0.75] {
                        let params = TheoryParams {
                            dim,
                            shots: None,
                            eta,
                            alpha,
                            beta: None,
                            delta,
                        };
                        let primary = noiseless_convergence_horizon(&params)?.steps;
                        let alt = alt_noiseless_horizon(dim, eta, alpha, delta);
                        residuals.push((primary - alt).abs() / primary.abs().max(1e-300));
                    }
                }
            }
        }
        rows.push(SuiteRow::from_residuals(
            "horizon_noiseless_dual_path",
            &residuals,
            1e-9,
        ));

        let mut residuals = Vec::new();
        for &dim in &[2usize, 4] {
            for &eta in &[0.1, 0.25, 0.4] {
                for &alpha in &[0.1, 0.2] {
                    for &beta in &[0.52, 0.55, 0.65] {
                        for &shots in &[10u64, 1000] {
                            for &delta in &[0.3, 0.7] {
                                let params = TheoryParams {
                                    dim,
                                    shots: Some(shots),
                                    eta,
                                    alpha,
                                    beta: Some(beta),
                                    delta,
                                };
                                let primary = noisy_convergence_horizon(&params)?.steps;
                                let alt = alt_noisy_horizon(dim, shots, eta, alpha, beta, delta);
                                residuals
                                    .push((primary - alt).abs() / primary.abs().max(1e-300));
                            }
                        }
                    }
                }
            }
        }
        rows.push(SuiteRow::from_residuals("horizon_noisy_dual_path", &residuals, 1e-9));
    }

    // -- telescoping of the divergence chain over a noiseless run ---------
    {
        let basis = &basis_by_m[0];
        let rho = random_density_matrix(2, None, &mut rng)?;
        let eta = 0.4;
        let steps = 2_000u64;
        let mut estimate = DensityMatrix::maximally_mixed(2);
        let initial_divergence = relative_entropy(&rho, &estimate)?;
        let mut divergence = initial_divergence;
        let mut delta_sum = 0.0;
        let mut loss_sum = 0.0;
        for _ in 0..steps {
            let index = rng.uniform_index(basis.len());
            let x = basis.observable(index)?;
            let y = x.trace_product(rho.as_hermitian());
            let r = x.trace_product(estimate.as_hermitian()) - y;
            loss_sum += r * r;
            estimate = meg_successor(&estimate, x, y, eta)?;
            let next = relative_entropy(&rho, &estimate)?;
            delta_sum += divergence - next;
            divergence = next;
        }
        let telescoped = initial_divergence - divergence;
        rows.push(SuiteRow::from_residuals(
            "divergence_telescoping",
            &[(delta_sum - telescoped).abs()],
            1e-9,
        ));
        // summed Corollary-style chain: D₁ − D_{T+1} ≥ η ΣL_t − T·1e-9
        rows.push(SuiteRow::from_slacks(
            "summed_loss_chain",
            &[telescoped - eta * loss_sum + steps as f64 * 1e-9],
            0.0,
        ));
    }

    Ok(rows)
}

fn enumerate_noiseless_loss(basis: &PauliBasis, sigma: &DensityMatrix, rho: &DensityMatrix) -> f64 {
    let mut total = 0.0;
    for x in basis.observables() {
        let r = x.trace_product(sigma.as_hermitian()) - x.trace_product(rho.as_hermitian());
        total += r * r;
    }
    total / basis.len() as f64
}

fn enumerate_noise_variance(basis: &PauliBasis, rho: &DensityMatrix, shots: u64) -> f64 {
    let mut total = 0.0;
    for x in basis.observables() {
        let y = x.trace_product(rho.as_hermitian());
        total += (1.0 - y * y) / shots as f64;
    }
    total / basis.len() as f64
}

/// Independent second route for the noiseless horizon: the formula composed
/// entirely in the log domain.
fn alt_noiseless_horizon(dim: usize, eta: f64, alpha: f64, delta: f64) -> f64 {
    let d = dim as f64;
    let ln_k = (d * d - 1.0).ln() - eta.ln() - d.ln() + d.ln().ln();
    let k = ln_k.exp();
    ((3.0 / (1.0 - alpha)) * ((k + 2.0).ln() - delta.ln())).exp()
}

/// Independent second route for the noisy horizon, with its own zeta
/// evaluation (long partial sum plus a midpoint integral tail).
fn alt_noisy_horizon(dim: usize, shots: u64, eta: f64, alpha: f64, beta: f64, delta: f64) -> f64 {
    let d = dim as f64;
    let zeta = alt_zeta(2.0 * beta);
    let inner = d.ln() + (2.0 / shots as f64) * (eta * eta / (1.0 - 2.0 * eta)) * zeta;
    let ln_k = (d * d - 1.0).ln() - eta.ln() - d.ln() + inner.ln();
    let k = ln_k.exp();
    ((3.0 / (1.0 - alpha - beta)) * ((k + 2.0).ln() - delta.ln())).exp()
}

fn alt_zeta(s: f64) -> f64 {
    const CUTOFF: u64 = 100_000;
    let mut sum = 0.0;
    for t in (1..=CUTOFF).rev() {
        sum += (t as f64).powf(-s);
    }
    sum + (CUTOFF as f64 + 0.5).powf(1.0 - s) / (s - 1.0)
}
