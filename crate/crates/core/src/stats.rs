//! Small statistics helpers shared by the estimators.

use serde::{Deserialize, Serialize};

/// Normal quantile for a two-sided 95% interval.
pub const Z95: f64 = 1.959_963_984_540_054;

/// A binomial proportion with its 95% Wilson score interval.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Proportion {
    pub successes: usize,
    pub trials: usize,
    pub p_hat: f64,
    pub ci: [f64; 2],
}

impl Proportion {
    pub fn new(successes: usize, trials: usize) -> Self {
        let (lo, hi) = wilson(successes, trials, Z95);
        let p_hat = if trials == 0 { 0.0 } else { successes as f64 / trials as f64 };
        Proportion { successes, trials, p_hat, ci: [lo, hi] }
    }

    pub fn from_indicators(ind: &[bool]) -> Self {
        Self::new(ind.iter().filter(|&&b| b).count(), ind.len())
    }

    pub fn half_width(&self) -> f64 {
        0.5 * (self.ci[1] - self.ci[0])
    }
}

pub fn wilson(successes: usize, trials: usize, z: f64) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let n = trials as f64;
    let p = successes as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let centre = (p + z2 / (2.0 * n)) / denom;
    let half = z * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    ((centre - half).max(0.0).min(p), (centre + half).min(1.0).max(p))
}

/// Sample mean and (n-1)-normalised standard deviation.
pub fn mean_sd(xs: &[f64]) -> (f64, f64) {
    let n = xs.len();
    if n == 0 {
        return (f64::NAN, f64::NAN);
    }
    let mean = xs.iter().sum::<f64>() / n as f64;
    if n == 1 {
        return (mean, 0.0);
    }
    let var = xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (n - 1) as f64;
    (mean, var.sqrt())
}

/// Two-sample Kolmogorov–Smirnov statistic against a continuous CDF.
pub fn ks_statistic(samples: &mut [f64], cdf: impl Fn(f64) -> f64) -> f64 {
    samples.sort_by(|a, b| a.total_cmp(b));
    let n = samples.len() as f64;
    samples
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = cdf(x);
            (f - i as f64 / n).abs().max(((i + 1) as f64 / n - f).abs())
        })
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wilson_contains_point_estimate_and_stays_in_unit_interval() {
        for &(s, n) in &[(0, 10), (10, 10), (3, 10), (250, 500)] {
            let p = Proportion::new(s, n);
            assert!(p.ci[0] <= p.p_hat && p.p_hat <= p.ci[1]);
            assert!(p.ci[0] >= 0.0 && p.ci[1] <= 1.0);
        }
        // 0/10 upper limit is z^2/(n+z^2)
        let (_, hi) = wilson(0, 10, Z95);
        assert!((hi - Z95 * Z95 / (10.0 + Z95 * Z95)).abs() < 1e-12);
    }

    #[test]
    fn ks_of_exact_quantiles_is_small() {
        let mut xs: Vec<f64> = (0..1000).map(|i| (i as f64 + 0.5) / 1000.0).collect();
        let d = ks_statistic(&mut xs, |x| x);
        assert!((d - 0.0005).abs() < 1e-12);
    }
}
