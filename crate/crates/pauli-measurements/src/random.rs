use nalgebra::DMatrix;
use num_complex::Complex64;
use quantum_core::{DensityMatrix, HermitianMatrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rand_distr::{Binomial, Distribution, StandardNormal};

use crate::{Error, Result};

/// Name of the underlying generator, recorded in output metadata so traces
/// can be replayed against the exact same stream.
pub const GENERATOR_NAME: &str = "chacha12";

/// Seeded counter-based random source.
///
/// ChaCha12 keyed from the 64-bit seed; independent substreams come from the
/// cipher's 64-bit stream id, so `(master_seed, stream_id)` fully determines
/// the byte stream.
#[derive(Debug, Clone)]
pub struct RandomSource {
    rng: ChaCha12Rng,
}

impl RandomSource {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha12Rng::seed_from_u64(seed),
        }
    }

    /// Derived stream: same key as `new(master_seed)` but an independent
    /// counter stream. Used to give each trial (and each role within a
    /// trial) its own reproducible stream.
    pub fn stream(master_seed: u64, stream_id: u64) -> Self {
        let mut rng = ChaCha12Rng::seed_from_u64(master_seed);
        rng.set_stream(stream_id);
        Self { rng }
    }

    pub fn uniform_index(&mut self, n: usize) -> usize {
        self.rng.random_range(0..n)
    }

    pub fn uniform_f64(&mut self) -> f64 {
        self.rng.random()
    }

    pub fn standard_normal(&mut self) -> f64 {
        StandardNormal.sample(&mut self.rng)
    }

    pub fn complex_gaussian(&mut self) -> Complex64 {
        Complex64::new(self.standard_normal(), self.standard_normal())
    }

    /// Exact binomial draw (inversion for small n·p, BTPE otherwise —
    /// never a normal approximation).
    pub fn binomial(&mut self, n: u64, p: f64) -> u64 {
        Binomial::new(n, p)
            .expect("p must be within [0, 1]")
            .sample(&mut self.rng)
    }
}

/// Ginibre-ensemble random state: `ρ = GG†/tr(GG†)` with `G` a d×rank
/// matrix of independent standard complex Gaussians. Full rank by default;
/// `rank = 1` gives Haar-random pure states.
pub fn random_density_matrix(
    dim: usize,
    rank: Option<usize>,
    rng: &mut RandomSource,
) -> Result<DensityMatrix> {
    let rank = rank.unwrap_or(dim);
    if rank == 0 || rank > dim {
        return Err(Error::InvalidRank { rank, dim });
    }
    let g = DMatrix::from_fn(dim, rank, |_, _| rng.complex_gaussian());
    let gram = &g * g.adjoint();
    let trace: f64 = (0..dim).map(|i| gram[(i, i)].re).sum();
    let normalized = HermitianMatrix::symmetrized(gram / Complex64::new(trace, 0.0));
    Ok(DensityMatrix::from_hermitian_unchecked(normalized))
}
