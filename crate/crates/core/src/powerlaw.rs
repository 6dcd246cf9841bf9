//! Discrete power-law tail fits.
//!
//! The exponent is the exact discrete maximum-likelihood estimate for
//! `P(X = k) = k^-a / zeta(a, xmin)`, `k >= xmin`, found by golden-section
//! search on the (concave) log-likelihood.

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Minimum number of tail observations required for a fit.
pub const MIN_TAIL_SAMPLES: usize = 100;

/// Default lower cutoff for degree tails.
pub const DEFAULT_XMIN: usize = 10;

// B_2, B_4, ..., B_16
const BERNOULLI: [f64; 8] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
];

/// Hurwitz zeta `sum_{k>=0} (q + k)^-s` for `s > 1`, `q > 0`, by
/// Euler–Maclaurin summation after 20 explicit terms.
pub fn hurwitz_zeta(s: f64, q: f64) -> f64 {
    assert!(s > 1.0 && q > 0.0, "hurwitz_zeta needs s > 1, q > 0");
    const M: usize = 20;
    let head: f64 = (0..M).map(|k| (q + k as f64).powf(-s)).sum();
    let a = q + M as f64;
    let mut tail = a.powf(1.0 - s) / (s - 1.0) + 0.5 * a.powf(-s);
    // rising factorial s (s+1) ... (s+2j-2) / (2j)!, times a^{-s-2j+1}
    let mut coeff = s / 2.0;
    let mut power = a.powf(-s - 1.0);
    for (j, b) in BERNOULLI.iter().enumerate() {
        tail += b * coeff * power;
        let two_j = 2.0 * (j + 1) as f64;
        coeff *= (s + two_j - 1.0) * (s + two_j) / ((two_j + 1.0) * (two_j + 2.0));
        power /= a * a;
    }
    head + tail
}

/// Discrete MLE of the tail exponent over the values `>= xmin`.
pub fn discrete_power_law_mle(values: &[usize], xmin: usize) -> Result<f64> {
    if xmin == 0 {
        return Err(Error::Estimation("xmin must be at least 1".into()));
    }
    let tail: Vec<f64> = values.iter().filter(|&&v| v >= xmin).map(|&v| v as f64).collect();
    if tail.len() < MIN_TAIL_SAMPLES {
        return Err(Error::Estimation(format!(
            "only {} values >= {xmin}; need at least {MIN_TAIL_SAMPLES}",
            tail.len()
        )));
    }
    let n = tail.len() as f64;
    let sum_ln: f64 = tail.iter().map(|x| x.ln()).sum();
    let q = xmin as f64;
    let loglik = |a: f64| -a * sum_ln - n * hurwitz_zeta(a, q).ln();
    Ok(golden_max(loglik, 1.0 + 1e-6, 20.0, 1e-10))
}

/// Tail exponent of the degree sequence of `graph`.
pub fn degree_tail_exponent(graph: &Graph, xmin: usize) -> Result<f64> {
    discrete_power_law_mle(&graph.degrees(), xmin)
}

fn golden_max(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let mut c = hi - g * (hi - lo);
    let mut d = lo + g * (hi - lo);
    let (mut fc, mut fd) = (f(c), f(d));
    while hi - lo > tol {
        if fc > fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - g * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + g * (hi - lo);
            fd = f(d);
        }
    }
    0.5 * (lo + hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_distr::{Distribution, Zipf};

    /// Direct partial sum plus the integral of the remainder, as an oracle.
    fn zeta_by_summation(s: f64, q: f64) -> f64 {
        let k_max = 200_000;
        let head: f64 = (0..k_max).map(|k| (q + k as f64).powf(-s)).sum();
        let a = q + k_max as f64;
        head + a.powf(1.0 - s) / (s - 1.0) + 0.5 * a.powf(-s)
    }

    #[test]
    fn hurwitz_zeta_matches_summation_and_riemann_zeta() {
        for &(s, q) in &[(1.5, 1.0), (2.0, 1.0), (2.5, 5.0), (3.0, 10.0), (1.2, 0.5)] {
            let z = hurwitz_zeta(s, q);
            let oracle = zeta_by_summation(s, q);
            assert!((z - oracle).abs() < 1e-9 * oracle, "s={s} q={q}: {z} vs {oracle}");
        }
        let pi = std::f64::consts::PI;
        assert!((hurwitz_zeta(2.0, 1.0) - pi * pi / 6.0).abs() < 1e-13);
    }

    #[test]
    fn mle_recovers_synthetic_zipf_exponent() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let zipf = Zipf::new(1e12, 2.5).unwrap();
        let values: Vec<usize> = (0..100_000).map(|_| zipf.sample(&mut rng) as usize).collect();
        let a = discrete_power_law_mle(&values, 5).unwrap();
        assert!((a - 2.5).abs() < 0.05, "{a}");
    }

    #[test]
    fn too_few_tail_samples_is_an_error() {
        let values = vec![1usize; 1000];
        assert!(matches!(discrete_power_law_mle(&values, 2), Err(Error::Estimation(_))));
    }
}
