use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{nu_from_lambda, MIN_REPLICAS};
use crate::continuum::{event_c, ContinuumParams, EventKind, LayeredSample};
use crate::error::{domain, Error, Result};
use crate::rng::replica_seed;
use crate::stats::Proportion;

/// Settings of the crossing-probability bisection at `alpha = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LambdaSearch {
    pub h: f64,
    pub w: f64,
    pub replicas: usize,
    pub tol: f64,
    /// Initial bracket; `hi` is also the cap of the shared base process.
    pub lo: f64,
    pub hi: f64,
}

impl LambdaSearch {
    pub fn new(h: f64, w: f64, replicas: usize, tol: f64) -> Self {
        LambdaSearch { h, w, replicas, tol, lo: 0.05, hi: 12.0 }
    }
}

/// Bracket `[lo, hi]` around the intensity where `P(C_{w,h})` crosses 1/2.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LambdaBracket {
    pub lo: f64,
    pub hi: f64,
    pub h_used: f64,
    pub w_used: f64,
    /// `(lambda, p_hat, ci)` for every evaluated intensity, in increasing `lambda`.
    pub crossing_probs: Vec<(f64, f64, [f64; 2])>,
    pub replicas: usize,
    pub tol: f64,
    /// Replica/intensity pairs where the crossing indicator decreased in `lambda`.
    pub monotone_violations: usize,
    pub warning: Option<String>,
    /// `pi` times the bracket midpoint.
    pub nu_c: f64,
    pub seed: u64,
}

impl LambdaBracket {
    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }
}

/// Crossing indicators of every replica at one intensity; each replica reads
/// its own base process, shared across intensities.
fn indicators(search: &LambdaSearch, lambda: f64, seed: u64) -> Result<Vec<bool>> {
    let params = ContinuumParams::new(1.0, lambda)?;
    let window = EventKind::C { w: search.w, h: search.h }.window()?;
    (0..search.replicas)
        .into_par_iter()
        .map(|k| {
            let base = LayeredSample::sample(1.0, search.hi, window, replica_seed(seed, k))?;
            event_c(search.w, search.h, &base.slice(params)?)
        })
        .collect()
}

/// Bisection of `lambda -> P(C_{w,h})` at `alpha = 1` against 1/2, with
/// default search range `[0.05, 12]`.
pub fn bracket_lambda_c(h: f64, w: f64, replicas: usize, tol: f64, seed: u64) -> Result<LambdaBracket> {
    bracket_lambda_c_with(&LambdaSearch::new(h, w, replicas, tol), seed)
}

pub fn bracket_lambda_c_with(search: &LambdaSearch, seed: u64) -> Result<LambdaBracket> {
    if !(search.tol > 0.0) {
        return domain(format!("tol must be positive, got {}", search.tol));
    }
    if !(search.lo > 0.0 && search.lo < search.hi) {
        return domain("the initial bracket must satisfy 0 < lo < hi");
    }
    if search.replicas < MIN_REPLICAS {
        return Err(Error::Estimation(format!("{} replicas is below the minimum of {MIN_REPLICAS}", search.replicas)));
    }
    let mut evaluated: Vec<(f64, Vec<bool>)> = Vec::new();
    let mut eval = |lambda: f64| -> Result<f64> {
        let ind = indicators(search, lambda, seed)?;
        let p = Proportion::from_indicators(&ind).p_hat;
        evaluated.push((lambda, ind));
        Ok(p)
    };
    let mut warning = None;
    let (mut lo, mut hi) = (search.lo, search.hi);
    let mut p_lo = eval(lo)?;
    while p_lo >= 0.5 && lo > 1e-3 {
        hi = lo;
        lo /= 4.0;
        p_lo = eval(lo)?;
    }
    if p_lo >= 0.5 {
        warning = Some(format!("crossing probability at lambda = {lo} is already {p_lo}"));
    } else if hi == search.hi && eval(hi)? <= 0.5 {
        warning = Some(format!("crossing probability at the cap lambda = {hi} does not exceed 1/2"));
    }
    if warning.is_none() {
        while hi - lo > search.tol {
            let mid = 0.5 * (lo + hi);
            if eval(mid)? > 0.5 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
    }
    evaluated.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut violations = 0;
    for pair in evaluated.windows(2) {
        violations += pair[0].1.iter().zip(&pair[1].1).filter(|(a, b)| **a && !**b).count();
    }
    if violations > 0 {
        let first = evaluated.iter().position(|e| Proportion::from_indicators(&e.1).p_hat > 0.5);
        let last = evaluated.iter().rposition(|e| Proportion::from_indicators(&e.1).p_hat <= 0.5);
        if let (Some(f), Some(l)) = (first, last) {
            lo = lo.min(evaluated[f.saturating_sub(1)].0);
            hi = hi.max(evaluated[(l + 1).min(evaluated.len() - 1)].0);
        }
        warning = Some(format!("{violations} non-monotone replica indicators; bracket widened"));
    }
    let crossing_probs = evaluated
        .iter()
        .map(|(l, ind)| {
            let p = Proportion::from_indicators(ind);
            (*l, p.p_hat, p.ci)
        })
        .collect();
    Ok(LambdaBracket {
        lo,
        hi,
        h_used: search.h,
        w_used: search.w,
        crossing_probs,
        replicas: search.replicas,
        tol: search.tol,
        monotone_violations: violations,
        warning,
        nu_c: nu_from_lambda(0.5 * (lo + hi)),
        seed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_bracket_is_ordered_and_monotone() {
        let b = bracket_lambda_c(2.0, 2.0, 40, 0.5, 1).unwrap();
        assert!(b.lo < b.hi && b.hi - b.lo <= 0.5, "{b:?}");
        assert_eq!(b.monotone_violations, 0);
        let probs: Vec<f64> = b.crossing_probs.iter().map(|c| c.1).collect();
        assert!(probs.windows(2).all(|p| p[0] <= p[1]));
    }

    #[test]
    fn bad_tolerance_is_rejected() {
        assert!(bracket_lambda_c(2.0, 2.0, 40, 0.0, 1).is_err());
    }
}
