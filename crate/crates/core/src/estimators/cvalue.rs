use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{lambda_from_nu, MIN_REPLICAS};
use crate::continuum::{
    event_t, event_u, sample_continuum, ContinuumParams, EventKind, LayeredSample, PoissonField, PointSource, Window,
    EAGER_LIMIT,
};
use crate::error::{domain, Error, Result};
use crate::rng::{derive, replica_seed};
use crate::stats::Proportion;

const STREAM_T: u64 = 41;
const STREAM_U: u64 = 42;

/// Monte Carlo settings for [`c_of`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct McConfig {
    pub replicas: usize,
    /// Height parameter of the events (raised to cover the cutoff if needed).
    pub h: f64,
    pub w: f64,
    /// Size parameter of `U` (raised to cover the cutoff if needed).
    pub n: f64,
    /// Total error budget; the tail beyond the cutoff gets half of it.
    pub error_budget: f64,
    /// `(alpha_min, lambda_max)` of a shared layered base process. When set,
    /// all estimates with the same seed read the same base realisation, so
    /// their differences are not blurred by independent noise.
    pub envelope: Option<(f64, f64)>,
}

impl Default for McConfig {
    fn default() -> Self {
        McConfig { replicas: 200, h: 8.0, w: 2.0, n: 8.0, error_budget: 0.05, envelope: None }
    }
}

/// Estimate of `c(alpha, nu) = ∫_0^inf theta(y; alpha, nu alpha / pi) alpha e^{-alpha y} dy`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CEstimate {
    pub alpha: f64,
    pub nu: f64,
    pub lambda: f64,
    /// Midpoint of the sandwich integral plus half the tail mass.
    pub value: f64,
    /// Integral of the `T` rates over `[0, K]`.
    pub lower_value: f64,
    /// Integral of the `1 - U` rates over `[0, K]` plus the tail mass.
    pub upper_value: f64,
    /// Integral of the Wilson half-widths against the weight.
    pub mc_half_width: f64,
    /// `e^{-alpha K}`.
    pub tail_mass: f64,
    /// Half the sandwich gap plus the Monte Carlo half-width.
    pub uncertainty: f64,
    /// `(y, theta midpoint)` at the quadrature nodes.
    pub grid: Vec<(f64, f64)>,
    pub tail_cutoff: f64,
    pub error_budget: f64,
    pub replicas: usize,
    pub exact: bool,
    pub seed: u64,
}

fn realise(params: ContinuumParams, window: Window, seed: u64, envelope: Option<(f64, f64)>) -> Result<Box<dyn PointSource>> {
    let (w, h) = (window.half_width(), window.height());
    if let Some((a_env, z_cap)) = envelope {
        let env = ContinuumParams::new(a_env, z_cap)?;
        if env.mass(-w, w, 0.0, h) <= EAGER_LIMIT {
            return Ok(Box::new(LayeredSample::sample(a_env, z_cap, window, seed)?.slice(params)?));
        }
    }
    if params.mass(-w, w, 0.0, h) <= EAGER_LIMIT {
        Ok(Box::new(sample_continuum(params, window, seed)))
    } else {
        Ok(Box::new(PoissonField::new(params, window, seed)))
    }
}

fn trapezoid(ys: &[f64], f: impl Fn(usize) -> f64) -> f64 {
    ys.windows(2).enumerate().map(|(k, p)| 0.5 * (p[1] - p[0]) * (f(k) + f(k + 1))).sum()
}

/// Estimates `c(alpha, nu)`. Exact for `alpha > 1` (0) and `alpha <= 1/2`
/// (1); otherwise a trapezoid rule over `quadrature_nodes` heights in
/// `[0, K]` with `e^{-alpha K} = error_budget / 2`.
pub fn c_of(alpha: f64, nu: f64, quadrature_nodes: usize, cfg: &McConfig, seed: u64) -> Result<CEstimate> {
    if !(alpha > 0.0 && nu > 0.0) {
        return domain(format!("alpha and nu must be positive, got {alpha}, {nu}"));
    }
    let lambda = lambda_from_nu(alpha, nu);
    let exact = |value: f64| CEstimate {
        alpha,
        nu,
        lambda,
        value,
        lower_value: value,
        upper_value: value,
        mc_half_width: 0.0,
        tail_mass: 0.0,
        uncertainty: 0.0,
        grid: Vec::new(),
        tail_cutoff: 0.0,
        error_budget: cfg.error_budget,
        replicas: 0,
        exact: true,
        seed,
    };
    if alpha > 1.0 {
        return Ok(exact(0.0));
    }
    if alpha <= 0.5 {
        return Ok(exact(1.0));
    }
    if cfg.replicas < MIN_REPLICAS {
        return Err(Error::Estimation(format!("{} replicas is below the minimum of {MIN_REPLICAS}", cfg.replicas)));
    }
    if quadrature_nodes < 2 || !(cfg.error_budget > 0.0 && cfg.error_budget < 2.0) {
        return domain("need at least 2 quadrature nodes and an error budget in (0, 2)");
    }
    let params = ContinuumParams::new(alpha, lambda)?;
    let cutoff = (2.0 / cfg.error_budget).ln() / alpha;
    let n = cfg.n.max(cutoff);
    let h = cfg.h.max(n);
    let ys: Vec<f64> = (0..quadrature_nodes).map(|k| cutoff * k as f64 / (quadrature_nodes - 1) as f64).collect();
    let window_t = EventKind::T { y: 0.0, h, w: cfg.w }.window()?;
    let window_u = EventKind::U { y: 0.0, n, h }.window()?;
    let (seed_t, seed_u) = (derive(seed, &[STREAM_T]), derive(seed, &[STREAM_U]));
    let per_replica = (0..cfg.replicas)
        .into_par_iter()
        .map(|k| -> Result<(Vec<bool>, Vec<bool>)> {
            let st = realise(params, window_t, replica_seed(seed_t, k), cfg.envelope)?;
            let su = realise(params, window_u, replica_seed(seed_u, k), cfg.envelope)?;
            let t = ys.iter().map(|&y| event_t(y, h, cfg.w, st.as_ref())).collect::<Result<Vec<_>>>()?;
            let u = ys.iter().map(|&y| event_u(y, n, h, su.as_ref())).collect::<Result<Vec<_>>>()?;
            Ok((t, u))
        })
        .collect::<Result<Vec<_>>>()?;
    let rates = |pick: &dyn Fn(&(Vec<bool>, Vec<bool>), usize) -> bool| -> Vec<Proportion> {
        (0..ys.len())
            .map(|i| Proportion::new(per_replica.iter().filter(|r| pick(r, i)).count(), cfg.replicas))
            .collect()
    };
    let pt = rates(&|r, i| r.0[i]);
    let pu = rates(&|r, i| r.1[i]);
    let weight = |k: usize| alpha * (-alpha * ys[k]).exp();
    let lower = trapezoid(&ys, |k| pt[k].p_hat * weight(k));
    let upper_core = trapezoid(&ys, |k| (1.0 - pu[k].p_hat) * weight(k));
    let mc = trapezoid(&ys, |k| pt[k].half_width().max(pu[k].half_width()) * weight(k));
    let tail = (-alpha * cutoff).exp();
    let upper = upper_core + tail;
    let grid = ys.iter().enumerate().map(|(k, &y)| (y, 0.5 * (pt[k].p_hat + 1.0 - pu[k].p_hat))).collect();
    Ok(CEstimate {
        value: (0.5 * (lower + upper)).clamp(0.0, 1.0),
        lower_value: lower,
        upper_value: upper,
        mc_half_width: mc,
        tail_mass: tail,
        uncertainty: 0.5 * (upper - lower).abs() + mc,
        grid,
        tail_cutoff: cutoff,
        replicas: cfg.replicas,
        exact: false,
        ..exact(0.0)
    })
}
