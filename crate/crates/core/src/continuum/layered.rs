use rand::Rng as _;
use serde::{Deserialize, Serialize};

use super::sample::truncated_exp_quantile;
use super::{ContinuumParams, ContinuumSample, Window};
use crate::error::{domain, Result};
use crate::geometry::HalfPlanePoint;
use crate::rng::{poisson, rng_from};

const STREAM_COUNT: u64 = 11;
const STREAM_POINTS: u64 = 12;

/// A point of the unit-intensity process on `R x [0, inf) x (0, inf)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LayeredPoint {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

/// A realisation of the unit-intensity process `Q` on a window, from which
/// every `P_{alpha,lambda}` is read off as `{(x, y) : z < lambda e^{-alpha y}}`.
///
/// Only the part of `Q` below `z_cap e^{-alpha_min y}` is generated; it
/// contains every slice with `alpha >= alpha_min` and `lambda <= z_cap`, so the
/// slices are exactly those of the full process.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LayeredSample {
    pub points: Vec<LayeredPoint>,
    pub window: Window,
    pub z_cap: f64,
    pub alpha_min: f64,
    pub seed: u64,
}

impl LayeredSample {
    pub fn sample(alpha_min: f64, z_cap: f64, window: Window, seed: u64) -> Result<Self> {
        let envelope = ContinuumParams::new(alpha_min, z_cap)?;
        let (w, h) = (window.half_width(), window.height());
        let count = poisson(envelope.mass(-w, w, 0.0, h), &mut rng_from(seed, &[STREAM_COUNT]));
        let mut rng = rng_from(seed, &[STREAM_POINTS]);
        let points = (0..count)
            .map(|_| {
                let x = -w + 2.0 * w * rng.random::<f64>();
                let y = truncated_exp_quantile(alpha_min, h, rng.random::<f64>());
                let z = envelope.intensity(y) * (1.0 - rng.random::<f64>());
                LayeredPoint { x, y, z }
            })
            .collect();
        Ok(LayeredSample { points, window, z_cap, alpha_min, seed })
    }

    /// The points of `P_{alpha,lambda}`, in base order.
    pub fn slice(&self, params: ContinuumParams) -> Result<ContinuumSample> {
        if params.lambda() > self.z_cap {
            return domain(format!("lambda {} exceeds the layer cap {}", params.lambda(), self.z_cap));
        }
        if params.alpha() < self.alpha_min {
            return domain(format!("alpha {} is below the layer envelope {}", params.alpha(), self.alpha_min));
        }
        let points = self
            .points
            .iter()
            .filter(|p| p.z < params.intensity(p.y))
            .map(|p| HalfPlanePoint::new(p.x, p.y))
            .collect();
        Ok(ContinuumSample::from_points(points, params, self.window, self.seed))
    }
}

/// Nested samples for the pairs `(alphas[k], lambdas[k])`, all read off one
/// base process, so `alpha >= alpha'` and `lambda <= lambda'` give point-set
/// containment.
pub fn sample_layered(
    alphas: &[f64],
    lambdas: &[f64],
    window: Window,
    z_cap: f64,
    seed: u64,
) -> Result<Vec<ContinuumSample>> {
    if alphas.len() != lambdas.len() || alphas.is_empty() {
        return domain("alpha and lambda lists must be non-empty and of equal length");
    }
    let params = alphas
        .iter()
        .zip(lambdas)
        .map(|(&a, &l)| ContinuumParams::new(a, l))
        .collect::<Result<Vec<_>>>()?;
    let lambda_max = params.iter().map(|p| p.lambda()).fold(0.0, f64::max);
    if !(z_cap >= lambda_max) {
        return domain(format!("z_cap {z_cap} is below the largest lambda {lambda_max}"));
    }
    let alpha_min = params.iter().map(|p| p.alpha()).fold(f64::INFINITY, f64::min);
    let base = LayeredSample::sample(alpha_min, z_cap, window, seed)?;
    params.into_iter().map(|p| base.slice(p)).collect()
}
