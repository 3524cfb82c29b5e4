use serde::Serialize;

/// Two-sided 95% normal quantile.
pub const Z_95: f64 = 1.959_963_984_540_054;

/// Wilson score interval for `successes` out of `n` trials.
pub fn wilson_interval(successes: u64, n: u64, z: f64) -> (f64, f64) {
    if n == 0 {
        return (0.0, 1.0);
    }
    let n = n as f64;
    let p = successes as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let half = z * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    // Clamp so the interval always contains the point estimate exactly.
    ((center - half).clamp(0.0, p), (center + half).clamp(p, 1.0))
}

/// Empirical survival function on a time grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReliabilityCurve {
    pub grid: Vec<f64>,
    pub estimate: Vec<f64>,
    pub ci_low: Vec<f64>,
    pub ci_high: Vec<f64>,
    pub n_reps: u64,
    /// Cumulative soft failures by each grid time.
    pub soft_count: Vec<u64>,
    /// Cumulative hard failures by each grid time.
    pub hard_count: Vec<u64>,
}

impl ReliabilityCurve {
    pub(crate) fn from_counts(grid: Vec<f64>, n_reps: u64, soft: Vec<u64>, hard: Vec<u64>) -> Self {
        let mut estimate = Vec::with_capacity(grid.len());
        let mut ci_low = Vec::with_capacity(grid.len());
        let mut ci_high = Vec::with_capacity(grid.len());
        for (s, h) in soft.iter().zip(&hard) {
            let alive = n_reps - s - h;
            let (lo, hi) = wilson_interval(alive, n_reps, Z_95);
            estimate.push(alive as f64 / n_reps as f64);
            ci_low.push(lo);
            ci_high.push(hi);
        }
        Self {
            grid,
            estimate,
            ci_low,
            ci_high,
            n_reps,
            soft_count: soft,
            hard_count: hard,
        }
    }

    pub fn len(&self) -> usize {
        self.grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grid.is_empty()
    }

    pub fn survived_count(&self, i: usize) -> u64 {
        self.n_reps - self.soft_count[i] - self.hard_count[i]
    }

    pub fn half_width(&self, i: usize) -> f64 {
        0.5 * (self.ci_high[i] - self.ci_low[i])
    }

    /// Binomial standard error of the estimate at grid index `i`.
    pub fn standard_error(&self, i: usize) -> f64 {
        let p = self.estimate[i];
        (p * (1.0 - p) / self.n_reps as f64).sqrt()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wilson_reference_values() {
        // 95 of 100: textbook Wilson interval (0.88825, 0.97846)
        let (lo, hi) = wilson_interval(95, 100, Z_95);
        assert!((lo - 0.888_25).abs() < 1e-4, "{lo}");
        assert!((hi - 0.978_46).abs() < 1e-4, "{hi}");
        let (lo, hi) = wilson_interval(100, 100, Z_95);
        assert!(lo < 1.0 && hi == 1.0);
        let (lo, hi) = wilson_interval(0, 100, Z_95);
        assert!(lo == 0.0 && hi > 0.0);
    }

    proptest::proptest! {
        #[test]
        fn wilson_brackets_estimate(n in 1u64..100_000, frac in 0.0f64..=1.0) {
            let k = ((n as f64) * frac).floor() as u64;
            let (lo, hi) = wilson_interval(k, n, Z_95);
            let p = k as f64 / n as f64;
            proptest::prop_assert!(0.0 <= lo && lo <= p && p <= hi && hi <= 1.0);
        }
    }
}
