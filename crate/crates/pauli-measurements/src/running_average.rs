use crate::MeasurementRecord;

/// Per-observable running mean of all outcomes seen so far.
///
/// Updates use the incremental form `ȳ ← ȳ + (ŷ − ȳ)/n`, which is
/// algebraically `((n−1)ȳ + ŷ)/n` but exactly idempotent on constant
/// streams (so noiseless inputs reproduce the raw value bit-for-bit).
#[derive(Debug, Clone, PartialEq)]
pub struct RunningAverageTable {
    counts: Vec<u64>,
    averages: Vec<f64>,
}

impl RunningAverageTable {
    pub fn new(num_observables: usize) -> Self {
        Self {
            counts: vec![0; num_observables],
            averages: vec![0.0; num_observables],
        }
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    /// Insert a value for `index`, returning the updated mean.
    pub fn update(&mut self, index: usize, value: f64) -> f64 {
        self.counts[index] += 1;
        let n = self.counts[index] as f64;
        self.averages[index] += (value - self.averages[index]) / n;
        self.averages[index]
    }

    /// Insert a record's outcome, returning the updated mean ȳ_t.
    pub fn update_with_record(&mut self, record: &MeasurementRecord) -> f64 {
        self.update(record.observable_index, record.y_hat)
    }

    pub fn count(&self, index: usize) -> u64 {
        self.counts[index]
    }

    /// Current mean, or `None` before the first insertion.
    pub fn average(&self, index: usize) -> Option<f64> {
        (self.counts[index] > 0).then(|| self.averages[index])
    }
}
