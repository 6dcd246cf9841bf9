use std::io::{self, Write};

use rand::Rng as _;
use serde::Serialize;

use super::{ContinuumParams, PointSource, Window};
use crate::geometry::HalfPlanePoint;
use crate::index::BandIndex;
use crate::rng::{poisson, rng_from};

const STREAM_COUNT: u64 = 1;
const STREAM_POINTS: u64 = 2;

/// A Poisson sample of `P_{alpha,lambda}` restricted to a window.
#[derive(Debug, Clone, Serialize)]
pub struct ContinuumSample {
    pub points: Vec<HalfPlanePoint>,
    pub params: ContinuumParams,
    pub window: Window,
    pub seed: u64,
    #[serde(skip)]
    index: Option<BandIndex>,
}

impl PartialEq for ContinuumSample {
    fn eq(&self, other: &Self) -> bool {
        self.points == other.points && self.params == other.params && self.window == other.window && self.seed == other.seed
    }
}

impl ContinuumSample {
    /// Wraps an explicit point list (points outside the window are kept as
    /// given; callers constructing test configurations are trusted).
    pub fn from_points(points: Vec<HalfPlanePoint>, params: ContinuumParams, window: Window, seed: u64) -> Self {
        let index = Some(build_index(&points));
        ContinuumSample { points, params, window, seed, index }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub(crate) fn index(&self) -> &BandIndex {
        self.index.as_ref().expect("sample index is built on construction")
    }

    /// CSV with header `x,y`.
    pub fn write_csv(&self, mut out: impl Write) -> io::Result<()> {
        writeln!(out, "x,y")?;
        for p in &self.points {
            writeln!(out, "{},{}", crate::fmt_sig(p.x), crate::fmt_sig(p.y))?;
        }
        Ok(())
    }
}

fn build_index(points: &[HalfPlanePoint]) -> BandIndex {
    BandIndex::new(points.iter().map(|p| (p.x, p.y)), std::f64::consts::LN_2, None)
}

/// Quantile of the density `alpha e^{-alpha y}` truncated to `[0, h]`.
pub(crate) fn truncated_exp_quantile(alpha: f64, h: f64, u: f64) -> f64 {
    let mass = -(-alpha * h).exp_m1();
    (-(-u * mass).ln_1p() / alpha).min(h)
}

/// Samples `P_{alpha,lambda}` on `[-W, W] x [0, H]`: a Poisson number of
/// points, `x` uniform and `y` from the truncated exponential law.
pub fn sample_continuum(params: ContinuumParams, window: Window, seed: u64) -> ContinuumSample {
    let (w, h) = (window.half_width(), window.height());
    let mean = params.mass(-w, w, 0.0, h);
    let count = poisson(mean, &mut rng_from(seed, &[STREAM_COUNT]));
    let mut rng = rng_from(seed, &[STREAM_POINTS]);
    let points = (0..count)
        .map(|_| {
            let x = -w + 2.0 * w * rng.random::<f64>();
            let y = truncated_exp_quantile(params.alpha(), h, rng.random::<f64>());
            HalfPlanePoint::new(x, y)
        })
        .collect();
    ContinuumSample::from_points(points, params, window, seed)
}

impl PointSource for ContinuumSample {
    fn params(&self) -> ContinuumParams {
        self.params
    }

    fn window(&self) -> Window {
        self.window
    }

    fn for_each_in_rect(&self, x0: f64, x1: f64, y0: f64, y1: f64, visit: &mut dyn FnMut(HalfPlanePoint)) {
        let pts = &self.points;
        self.index().for_each_in_rect(x0, x1, y0, y1, |id| pts[id as usize].y, |id| visit(pts[id as usize]));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn support_and_determinism() {
        let params = ContinuumParams::new(1.0, 1.0).unwrap();
        let window = Window::new(5.0, 50.0).unwrap();
        let s = sample_continuum(params, window, 9);
        assert!(s.points.iter().all(|p| window.contains(p)));
        assert_eq!(s, sample_continuum(params, window, 9));
    }

    #[test]
    fn mean_count_within_three_sigma() {
        let params = ContinuumParams::new(1.0, 1.0).unwrap();
        let window = Window::new(5.0, 50.0).unwrap();
        let mu = params.mass(-5.0, 5.0, 0.0, 50.0);
        assert!((mu - 10.0).abs() < 1e-12);
        let runs = 10_000;
        let total: usize = (0..runs).map(|s| sample_continuum(params, window, s).len()).sum();
        let mean = total as f64 / runs as f64;
        assert!((mean - mu).abs() < 3.0 * (mu / runs as f64).sqrt(), "{mean}");
    }

    #[test]
    fn rect_query_matches_filter() {
        let params = ContinuumParams::new(0.7, 2.0).unwrap();
        let s = sample_continuum(params, Window::new(20.0, 6.0).unwrap(), 4);
        let mut got = Vec::new();
        s.for_each_in_rect(-3.0, 7.5, 0.4, 2.2, &mut |p| got.push(p));
        let want: Vec<_> =
            s.points.iter().filter(|p| p.x >= -3.0 && p.x <= 7.5 && p.y >= 0.4 && p.y <= 2.2).copied().collect();
        assert_eq!(got.len(), want.len());
        assert!(want.iter().all(|p| got.contains(p)));
    }
}
