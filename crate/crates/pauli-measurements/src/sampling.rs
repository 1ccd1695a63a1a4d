use quantum_core::{DensityMatrix, HermitianMatrix};
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::str::FromStr;

use crate::{Error, PauliBasis, RandomSource, Result};

const PROBABILITY_SLACK: f64 = 1e-9;

/// Shots per measurement: a finite repetition count or the noiseless
/// (infinite-shot) marker. Serialized as a number or the string `"inf"`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Shots {
    Finite(u64),
    Infinite,
}

impl Shots {
    pub fn is_finite(&self) -> bool {
        matches!(self, Shots::Finite(_))
    }

    pub fn as_f64(&self) -> f64 {
        match self {
            Shots::Finite(n) => *n as f64,
            Shots::Infinite => f64::INFINITY,
        }
    }
}

impl fmt::Display for Shots {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Shots::Finite(n) => write!(f, "{n}"),
            Shots::Infinite => write!(f, "inf"),
        }
    }
}

impl FromStr for Shots {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let trimmed = s.trim();
        if trimmed.eq_ignore_ascii_case("inf") || trimmed == "∞" {
            return Ok(Shots::Infinite);
        }
        trimmed
            .parse::<u64>()
            .map(Shots::Finite)
            .map_err(|_| format!("invalid shot count '{s}': expected a positive integer or 'inf'"))
    }
}

impl Serialize for Shots {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Shots::Finite(n) => serializer.serialize_u64(*n),
            Shots::Infinite => serializer.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Shots {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct ShotsVisitor;
        impl Visitor<'_> for ShotsVisitor {
            type Value = Shots;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a positive integer or the string \"inf\"")
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Shots, E> {
                Ok(Shots::Finite(v))
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Shots, E> {
                u64::try_from(v)
                    .map(Shots::Finite)
                    .map_err(|_| E::custom("shot count must be non-negative"))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Shots, E> {
                Shots::from_str(v).map_err(E::custom)
            }
        }
        deserializer.deserialize_any(ShotsVisitor)
    }
}

/// One measurement event: which observable, the empirical average
/// ŷ = (2n↑ − N)/N, the shot count, and the time step it belongs to.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasurementRecord {
    pub observable_index: usize,
    pub y_hat: f64,
    pub shots: Shots,
    pub t: u64,
}

impl MeasurementRecord {
    /// Validates that a finite-shot record encodes an integer up-count:
    /// `y_hat·N = 2n↑ − N` for some `n↑ ∈ [0, N]`.
    pub fn new(observable_index: usize, y_hat: f64, shots: Shots, t: u64) -> Result<Self> {
        if let Shots::Finite(n) = shots {
            if n == 0 {
                return Err(Error::ZeroShots);
            }
            let n_up = (n as f64) * (1.0 + y_hat) / 2.0;
            let rounded = n_up.round();
            if (n_up - rounded).abs() > 1e-6 || rounded < 0.0 || rounded > n as f64 {
                return Err(Error::MalformedRecord { y_hat, shots: n });
            }
        }
        Ok(Self {
            observable_index,
            y_hat,
            shots,
            t,
        })
    }

    /// Recover the up-count `n↑ = round(N(1 + ŷ)/2)`; exact for records
    /// produced by [`sample_measurement`].
    pub fn up_count(&self) -> Option<u64> {
        match self.shots {
            Shots::Finite(n) => {
                let n_up = ((n as f64) * (1.0 + self.y_hat) / 2.0).round();
                Some(n_up.clamp(0.0, n as f64) as u64)
            }
            Shots::Infinite => None,
        }
    }
}

/// Born-rule expectation `y = tr(ρX)`; real by Hermiticity, in [−1, 1]
/// for involutive observables.
pub fn expected_value(rho: &DensityMatrix, x: &HermitianMatrix) -> f64 {
    x.trace_product(rho.as_hermitian())
}

/// Simulate one shot-limited measurement of `basis[index]` on `rho`.
///
/// Finite N draws `n↑ ~ B(N, p)` with `p = tr(ρΠ↑) = (1 + tr(ρX))/2` and
/// returns `ŷ = (2n↑ − N)/N`; infinite N returns `tr(ρX)` exactly.
/// Probabilities outside `[−1e-9, 1 + 1e-9]` are rejected (the state is
/// not physical); excursions within that slack are clamped to [0, 1].
pub fn sample_measurement(
    rho: &DensityMatrix,
    basis: &PauliBasis,
    index: usize,
    shots: Shots,
    t: u64,
    rng: &mut RandomSource,
) -> Result<MeasurementRecord> {
    let x = basis.observable(index)?;
    let y = expected_value(rho, x);
    let p = (1.0 + y) / 2.0;
    if !(-PROBABILITY_SLACK..=1.0 + PROBABILITY_SLACK).contains(&p) {
        return Err(Error::InvalidProbability(p));
    }
    let p = p.clamp(0.0, 1.0);

    let y_hat = match shots {
        Shots::Infinite => y,
        Shots::Finite(0) => return Err(Error::ZeroShots),
        Shots::Finite(n) => {
            let n_up = rng.binomial(n, p);
            (2.0 * n_up as f64 - n as f64) / n as f64
        }
    };
    Ok(MeasurementRecord {
        observable_index: index,
        y_hat,
        shots,
        t,
    })
}
