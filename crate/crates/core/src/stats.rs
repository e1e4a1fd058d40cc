//! Streaming statistics: Welford's single-pass mean/variance with a
//! parallel merge, so Monte Carlo experiments never need to store samples.

use serde::Serialize;

/// Count / mean / sum-of-squared-deviations accumulator.
///
/// `merge` combines two accumulators as if their streams had been
/// concatenated; merging is associative to within floating-point rounding
/// (relative 1e-9 at the sample sizes used here). Experiments keep the
/// merge *order* fixed anyway so outputs are byte-identical across worker
/// counts.
#[derive(Debug, Clone, Copy, Default, Serialize)]
pub struct StatAccumulator {
    pub count: u64,
    pub mean: f64,
    pub m2: f64,
}

impl StatAccumulator {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, x: f64) {
        self.count += 1;
        let delta = x - self.mean;
        self.mean += delta / self.count as f64;
        self.m2 += delta * (x - self.mean);
    }

    pub fn merge(a: Self, b: Self) -> Self {
        if a.count == 0 {
            return b;
        }
        if b.count == 0 {
            return a;
        }
        let count = a.count + b.count;
        let delta = b.mean - a.mean;
        let mean = a.mean + delta * (b.count as f64 / count as f64);
        let m2 = a.m2 + b.m2 + delta * delta * (a.count as f64 * b.count as f64 / count as f64);
        Self { count, mean, m2 }
    }

    /// Unbiased sample variance; 0 for fewer than two samples.
    pub fn variance(&self) -> f64 {
        if self.count < 2 {
            0.0
        } else {
            self.m2 / (self.count - 1) as f64
        }
    }

    pub fn std_error(&self) -> f64 {
        if self.count == 0 {
            0.0
        } else {
            (self.variance() / self.count as f64).sqrt()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn acc_of(values: &[f64]) -> StatAccumulator {
        let mut a = StatAccumulator::new();
        for &v in values {
            a.push(v);
        }
        a
    }

    #[test]
    fn small_stream_mean_and_variance() {
        let a = acc_of(&[1.0, 2.0, 3.0]);
        assert_eq!(a.count, 3);
        assert!((a.mean - 2.0).abs() <= 1e-15);
        assert!((a.variance() - 1.0).abs() <= 1e-15);
        assert!((a.std_error() - (1.0f64 / 3.0).sqrt()).abs() <= 1e-15);
    }

    #[test]
    fn merge_equals_concatenation() {
        let merged = StatAccumulator::merge(acc_of(&[1.0, 2.0]), acc_of(&[3.0]));
        let direct = acc_of(&[1.0, 2.0, 3.0]);
        assert_eq!(merged.count, direct.count);
        assert!((merged.mean - direct.mean).abs() <= 1e-12);
        assert!((merged.m2 - direct.m2).abs() <= 1e-12);
    }

    #[test]
    fn constant_stream_has_zero_variance() {
        let c = 0.8125; // exactly representable
        let mut a = StatAccumulator::new();
        for _ in 0..1_000_000 {
            a.push(c);
        }
        assert_eq!(a.mean, c);
        assert!(a.variance() <= 1e-18);
    }

    #[test]
    fn merge_with_empty_is_identity() {
        let a = acc_of(&[4.0, 5.0]);
        let m = StatAccumulator::merge(a, StatAccumulator::new());
        assert_eq!(m.count, a.count);
        assert_eq!(m.mean, a.mean);
    }
}
