//! The half-plane model: a Poisson process with intensity `lambda e^{-alpha y}`
//! on `R x [0, inf)` and the graph `Gamma(P)` joining `(x, y)` and `(x', y')`
//! when `|x - x'| < e^{(y + y')/2}`.
//!
//! Events and explorations read points through [`PointSource`], implemented
//! both by eagerly sampled windows ([`ContinuumSample`]) and by the lazily
//! sampled [`PoissonField`], which makes windows as wide as `e^60` usable.

mod boxes;
mod events;
mod explore;
mod field;
mod gamma;
mod layered;
mod mecke;
pub mod lemmas;
mod sample;

use std::f64::consts::LN_2;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::geometry::HalfPlanePoint;

pub use boxes::{box_bounds, box_index, expected_box_count, neighbour_boxes, BoxIndex};
pub use events::{estimate_event, event_c, event_t, event_u, EventEstimate, EventKind};
pub(crate) use events::{evaluate_replica, EAGER_LIMIT};
pub use explore::{explore_rightmost, increment_cdf_bound, increment_mean_bound, EULER_GAMMA};
pub use field::PoissonField;
pub use gamma::{gamma_adjacent, gamma_graph, gamma_graph_torus, torus_adjacent, wrap_distance};
pub use layered::{sample_layered, LayeredPoint, LayeredSample};
pub use mecke::{expected_planted_degree, mecke_check, planted_degree, MeckeReport, Rect};
pub use sample::{sample_continuum, ContinuumSample};

/// Parameters of the intensity `lambda e^{-alpha y}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ContinuumParams {
    alpha: f64,
    lambda: f64,
}

impl ContinuumParams {
    pub fn new(alpha: f64, lambda: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha.is_finite()) {
            return domain(format!("alpha must be positive, got {alpha}"));
        }
        if !(lambda > 0.0 && lambda.is_finite()) {
            return domain(format!("lambda must be positive, got {lambda}"));
        }
        Ok(ContinuumParams { alpha, lambda })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn intensity(&self, y: f64) -> f64 {
        self.lambda * (-self.alpha * y).exp()
    }

    /// Expected number of points in `[x0, x1] x [y0, y1]`.
    pub fn mass(&self, x0: f64, x1: f64, y0: f64, y1: f64) -> f64 {
        if x1 <= x0 || y1 <= y0 {
            return 0.0;
        }
        let a = self.alpha;
        self.lambda * (x1 - x0) * (-a * y0).exp() * -(-a * (y1 - y0)).exp_m1() / a
    }
}

/// The simulated part `[-W, W] x [0, H]` of the half-plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Window {
    half_width: f64,
    height: f64,
}

impl Window {
    pub fn new(half_width: f64, height: f64) -> Result<Self> {
        if !(half_width > 0.0 && half_width.is_finite() && height > 0.0 && height.is_finite()) {
            return domain(format!("window needs positive finite sizes, got W={half_width}, H={height}"));
        }
        Ok(Window { half_width, height })
    }

    pub fn half_width(&self) -> f64 {
        self.half_width
    }

    pub fn height(&self) -> f64 {
        self.height
    }

    pub fn contains(&self, p: &HalfPlanePoint) -> bool {
        p.x.abs() <= self.half_width && p.y >= 0.0 && p.y <= self.height
    }

    /// Whether `[-half_width, half_width] x [0, height]` fits inside.
    pub fn covers(&self, half_width: f64, height: f64) -> bool {
        // a relative tolerance keeps windows built from the same formula valid
        half_width <= self.half_width * (1.0 + 1e-12) && height <= self.height * (1.0 + 1e-12)
    }

    pub(crate) fn require_cover(&self, half_width: f64, height: f64) -> Result<()> {
        if self.covers(half_width, height) {
            Ok(())
        } else {
            domain(format!(
                "window [-{}, {}] x [0, {}] does not contain [-{half_width}, {half_width}] x [0, {height}]",
                self.half_width, self.half_width, self.height
            ))
        }
    }
}

/// Read access to a realisation of the point process on a window.
pub trait PointSource {
    fn params(&self) -> ContinuumParams;

    fn window(&self) -> Window;

    /// Visits every point with `x0 <= x <= x1` and `y0 <= y <= y1`.
    fn for_each_in_rect(&self, x0: f64, x1: f64, y0: f64, y1: f64, visit: &mut dyn FnMut(HalfPlanePoint));
}

/// Visits the `Gamma`-neighbours of `p` (a point that need not belong to the
/// source) among source points with `|x| <= x_lim` and `y <= y_lim`. The point
/// `p` itself is reported if it is a source point.
pub(crate) fn for_each_neighbour(
    src: &dyn PointSource,
    p: HalfPlanePoint,
    x_lim: f64,
    y_lim: f64,
    visit: &mut dyn FnMut(HalfPlanePoint),
) {
    let mut lo = 0.0;
    let mut k = 1u32;
    while lo <= y_lim {
        let hi = (k as f64 * LN_2).min(y_lim);
        let reach = ((p.y + hi) / 2.0).exp();
        let x0 = (p.x - reach).max(-x_lim);
        let x1 = (p.x + reach).min(x_lim);
        if x0 <= x1 {
            src.for_each_in_rect(x0, x1, lo, hi, &mut |q| {
                // rows share their boundary; report each point once
                if (q.y > lo || lo == 0.0) && gamma_adjacent(&p, &q) {
                    visit(q);
                }
            });
        }
        if hi >= y_lim {
            break;
        }
        lo = hi;
        k += 1;
    }
}

/// Key identifying a point by its coordinates (points are a.s. distinct).
pub(crate) fn point_key(p: &HalfPlanePoint) -> (u64, u64) {
    (p.x.to_bits(), p.y.to_bits())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mass_of_unit_square() {
        let p = ContinuumParams::new(1.0, 1.0).unwrap();
        assert!((p.mass(0.0, 1.0, 0.0, 1.0) - 0.6321205588285577).abs() < 1e-15);
    }

    #[test]
    fn parameters_are_validated() {
        assert!(ContinuumParams::new(0.0, 1.0).is_err());
        assert!(ContinuumParams::new(1.0, -1.0).is_err());
        assert!(Window::new(1.0, 0.0).is_err());
    }
}
