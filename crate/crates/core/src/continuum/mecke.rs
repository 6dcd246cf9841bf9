use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{for_each_neighbour, sample_continuum, ContinuumParams, PointSource, Window};
use crate::error::{domain, Result};
use crate::geometry::HalfPlanePoint;
use crate::rng::replica_seed;
use crate::stats::mean_sd;

/// An axis-parallel rectangle `[x0, x1] x [y0, y1]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Rect {
    pub x0: f64,
    pub x1: f64,
    pub y0: f64,
    pub y1: f64,
}

impl Rect {
    pub fn contains(&self, p: &HalfPlanePoint) -> bool {
        p.x >= self.x0 && p.x <= self.x1 && p.y >= self.y0 && p.y <= self.y1
    }
}

/// Empirical first and second factorial moments of the count in a rectangle
/// against their Poisson values.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeckeReport {
    pub rect: Rect,
    pub replicas: usize,
    /// `mu(A)`, the integral of the intensity over the rectangle.
    pub mu: f64,
    pub mean_count: f64,
    /// Standardised deviation of the mean count, using `Var = mu`.
    pub count_z: f64,
    pub mean_ordered_pairs: f64,
    /// Standardised deviation of the mean number of ordered pairs, using
    /// `E = mu^2` and `Var = 4 mu^3 + 2 mu^2`.
    pub pair_z: f64,
    pub pass: bool,
}

/// Checks `E #(P ∩ A) = mu(A)` and `E #ordered pairs in A = mu(A)^2` within
/// 4 standard errors.
pub fn mecke_check(params: ContinuumParams, window: Window, rect: Rect, replicas: usize, seed: u64) -> Result<MeckeReport> {
    let w = window.half_width();
    if !(rect.x0 >= -w && rect.x1 <= w && rect.y0 >= 0.0 && rect.y1 <= window.height() && rect.x0 < rect.x1 && rect.y0 < rect.y1)
    {
        return domain("the rectangle must be a non-empty subset of the window");
    }
    if replicas < 2 {
        return domain("at least two replicas are needed");
    }
    let counts: Vec<f64> = (0..replicas)
        .into_par_iter()
        .map(|k| {
            let s = sample_continuum(params, window, replica_seed(seed, k));
            s.points.iter().filter(|p| rect.contains(p)).count() as f64
        })
        .collect();
    let mu = params.mass(rect.x0, rect.x1, rect.y0, rect.y1);
    let n = replicas as f64;
    let (mean_count, _) = mean_sd(&counts);
    let pairs: Vec<f64> = counts.iter().map(|c| c * (c - 1.0)).collect();
    let (mean_pairs, _) = mean_sd(&pairs);
    let count_z = (mean_count - mu) / (mu / n).sqrt();
    let pair_z = (mean_pairs - mu * mu) / ((4.0 * mu.powi(3) + 2.0 * mu * mu) / n).sqrt();
    Ok(MeckeReport {
        rect,
        replicas,
        mu,
        mean_count,
        count_z,
        mean_ordered_pairs: mean_pairs,
        pair_z,
        pass: count_z.abs() <= 4.0 && pair_z.abs() <= 4.0,
    })
}

/// Number of source points adjacent to the planted point `(0, y)`.
pub fn planted_degree(y: f64, src: &dyn PointSource) -> usize {
    let window = src.window();
    let mut d = 0;
    for_each_neighbour(src, HalfPlanePoint::new(0.0, y), window.half_width(), window.height(), &mut |_| d += 1);
    d
}

/// Expected degree of `(0, y)`: `2 lambda e^{y/2} ∫_0^H e^{(1/2 - alpha) y'} dy'`,
/// with `H = height` or `H = inf` (finite only for `alpha > 1/2`). The window
/// is assumed wide enough to contain the whole ball.
pub fn expected_planted_degree(params: &ContinuumParams, y: f64, height: Option<f64>) -> f64 {
    let k = 0.5 - params.alpha();
    let integral = match height {
        Some(h) if k.abs() < 1e-12 => h,
        Some(h) => (k * h).exp_m1() / k,
        None if k < 0.0 => -1.0 / k,
        None => f64::INFINITY,
    };
    2.0 * params.lambda() * (y / 2.0).exp() * integral
}
