use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::MIN_REPLICAS;
use crate::continuum::{evaluate_replica, ContinuumParams, EventKind};
use crate::error::{Error, Result};
use crate::rng::{derive, replica_seed};
use crate::stats::Proportion;

const STREAM_T: u64 = 31;
const STREAM_U: u64 = 32;

/// Sandwich estimate of `theta(y; alpha, lambda)`: `lower` is the rate of the
/// event `T(y; h, w)`, `upper` is one minus the rate of `U(y; n, h)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThetaEstimate {
    pub y: f64,
    pub params: ContinuumParams,
    pub lower: f64,
    pub upper: f64,
    pub lower_ci: [f64; 2],
    pub upper_ci: [f64; 2],
    pub replicas: usize,
    /// Larger of the two Wilson half-widths.
    pub ci_half_width: f64,
    /// True when the value is known in closed form (`alpha <= 1/2`).
    pub exact: bool,
    pub h: f64,
    pub w: f64,
    pub n: f64,
    pub seed: u64,
}

impl ThetaEstimate {
    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lower + self.upper)
    }

    /// `lower <= upper` up to the combined interval widths.
    pub fn is_consistent(&self) -> bool {
        self.lower <= self.upper + 2.0 * self.ci_half_width
    }
}

/// Estimates `theta(y; alpha, lambda)` from `replicas` realisations of each
/// event. For `alpha <= 1/2` the value is 1 and nothing is simulated.
pub fn estimate_theta(
    y: f64,
    params: ContinuumParams,
    h: f64,
    w: f64,
    n: f64,
    replicas: usize,
    seed: u64,
) -> Result<ThetaEstimate> {
    let base = ThetaEstimate {
        y,
        params,
        lower: 1.0,
        upper: 1.0,
        lower_ci: [1.0, 1.0],
        upper_ci: [1.0, 1.0],
        replicas: 0,
        ci_half_width: 0.0,
        exact: true,
        h,
        w,
        n,
        seed,
    };
    if params.alpha() <= 0.5 {
        return Ok(base);
    }
    if replicas < MIN_REPLICAS {
        return Err(Error::Estimation(format!("{replicas} replicas is below the minimum of {MIN_REPLICAS}")));
    }
    let t = EventKind::T { y, h, w };
    let u = EventKind::U { y, n, h };
    // validate both events before any sampling
    t.window()?;
    u.window()?;
    let (seed_t, seed_u) = (derive(seed, &[STREAM_T]), derive(seed, &[STREAM_U]));
    let pairs = (0..replicas)
        .into_par_iter()
        .map(|k| Ok((evaluate_replica(&t, params, replica_seed(seed_t, k))?, evaluate_replica(&u, params, replica_seed(seed_u, k))?)))
        .collect::<Result<Vec<(bool, bool)>>>()?;
    let pt = Proportion::new(pairs.iter().filter(|p| p.0).count(), replicas);
    let pu = Proportion::new(pairs.iter().filter(|p| p.1).count(), replicas);
    Ok(ThetaEstimate {
        lower: pt.p_hat,
        upper: 1.0 - pu.p_hat,
        lower_ci: pt.ci,
        upper_ci: [1.0 - pu.ci[1], 1.0 - pu.ci[0]],
        replicas,
        ci_half_width: pt.half_width().max(pu.half_width()),
        exact: false,
        ..base
    })
}

/// Doubles `w` from `w0` until the rate of `T(y; h, w)` changes by less than
/// its confidence half-width (at most `max_doublings` times). Returns the
/// chosen `w` and the `(w, rate)` trace.
pub fn calibrate_w(
    y: f64,
    params: ContinuumParams,
    h: f64,
    w0: f64,
    replicas: usize,
    max_doublings: usize,
    seed: u64,
) -> Result<(f64, Vec<(f64, f64)>)> {
    if replicas < MIN_REPLICAS {
        return Err(Error::Estimation(format!("{replicas} replicas is below the minimum of {MIN_REPLICAS}")));
    }
    let rate = |w: f64| -> Result<Proportion> {
        let kind = EventKind::T { y, h, w };
        let hits = (0..replicas)
            .into_par_iter()
            .map(|k| evaluate_replica(&kind, params, replica_seed(seed, k)))
            .collect::<Result<Vec<bool>>>()?;
        Ok(Proportion::from_indicators(&hits))
    };
    let mut w = w0;
    let mut prev = rate(w)?;
    let mut trace = vec![(w, prev.p_hat)];
    for _ in 0..max_doublings {
        let next = rate(2.0 * w)?;
        trace.push((2.0 * w, next.p_hat));
        if (next.p_hat - prev.p_hat).abs() < next.half_width() {
            return Ok((w, trace));
        }
        w *= 2.0;
        prev = next;
    }
    Ok((w, trace))
}
