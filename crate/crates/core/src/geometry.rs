//! Hyperbolic-plane primitives used by the disk model: the radial sampling
//! law, distances via the cosine rule, the adjacency threshold angle and its
//! rescaled form, and the elementary inequalities that control them.
//!
//! All `cosh`/`sinh` products are evaluated in log space or through
//! cancellation-free identities, so the functions stay accurate for radii far
//! beyond the point where `cosh(R)` overflows.

use std::f64::consts::{LN_2, PI, TAU};
use std::sync::atomic::{AtomicU64, Ordering};

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};

/// Clamps whose pre-clamp excursion exceeded this are counted.
pub const CLAMP_REPORT_THRESHOLD: f64 = 1e-9;

static CLAMP_EVENTS: AtomicU64 = AtomicU64::new(0);

/// Number of times an `arccos`/`arccosh` argument had to be pulled back into
/// its domain by more than [`CLAMP_REPORT_THRESHOLD`].
pub fn clamp_events() -> u64 {
    CLAMP_EVENTS.load(Ordering::Relaxed)
}

fn note_clamp(excess: f64) {
    if excess > CLAMP_REPORT_THRESHOLD {
        CLAMP_EVENTS.fetch_add(1, Ordering::Relaxed);
    }
}

/// Parameters of `G(N; alpha, nu)`; the disk radius is derived, never set.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KpkvbParams {
    n: usize,
    alpha: f64,
    nu: f64,
    radius: f64,
}

impl KpkvbParams {
    pub fn new(n: usize, alpha: f64, nu: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha.is_finite()) {
            return domain(format!("alpha must be positive, got {alpha}"));
        }
        if !(nu > 0.0 && nu.is_finite()) {
            return domain(format!("nu must be positive, got {nu}"));
        }
        let radius = disk_radius(n as f64, nu)?;
        Ok(KpkvbParams { n, alpha, nu, radius })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn nu(&self) -> f64 {
        self.nu
    }

    /// `R = 2 ln(N / nu)`.
    pub fn radius(&self) -> f64 {
        self.radius
    }

    /// Same `alpha`, `nu` with a different vertex count.
    pub fn with_n(&self, n: usize) -> Result<Self> {
        Self::new(n, self.alpha, self.nu)
    }
}

/// A vertex of the disk model in polar coordinates, angle in `(-pi, pi]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PolarPoint {
    pub r: f64,
    pub theta: f64,
}

impl PolarPoint {
    pub fn new(r: f64, theta: f64) -> Self {
        PolarPoint { r, theta: normalize_angle(theta) }
    }
}

/// A point of the upper half-plane `R x [0, inf)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HalfPlanePoint {
    pub x: f64,
    pub y: f64,
}

impl HalfPlanePoint {
    pub fn new(x: f64, y: f64) -> Self {
        debug_assert!(y >= 0.0, "half-plane point below the axis: y = {y}");
        HalfPlanePoint { x, y }
    }
}

/// Maps any angle to `(-pi, pi]`.
pub fn normalize_angle(theta: f64) -> f64 {
    let t = theta.rem_euclid(TAU);
    if t > PI {
        t - TAU
    } else {
        t
    }
}

/// Length of the shorter arc between two angles, in `[0, pi]`.
pub fn angular_distance(a: f64, b: f64) -> f64 {
    let d = (a - b).abs().rem_euclid(TAU);
    d.min(TAU - d)
}

/// `ln(sinh t)` for `t > 0` without overflow.
pub(crate) fn ln_sinh(t: f64) -> f64 {
    if t > 20.0 {
        t - LN_2 + (-(-2.0 * t).exp()).ln_1p()
    } else {
        t.sinh().ln()
    }
}

fn ln_cosh(t: f64) -> f64 {
    let t = t.abs();
    t - LN_2 + (-2.0 * t).exp().ln_1p()
}

fn log_add_exp(a: f64, b: f64) -> f64 {
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    hi + (lo - hi).exp().ln_1p()
}

/// Disk radius `R = 2 ln(N / nu)`; rejects `N <= nu`.
pub fn disk_radius(n: f64, nu: f64) -> Result<f64> {
    if !(nu > 0.0) {
        return domain(format!("nu must be positive, got {nu}"));
    }
    if !(n > nu) {
        return domain(format!("N = {n} must exceed nu = {nu} for a positive radius"));
    }
    Ok(2.0 * (n / nu).ln())
}

/// CDF of the radial coordinate, `(cosh(alpha r) - 1) / (cosh(alpha R) - 1)`
/// clipped to `[0, 1]` outside `[0, R]`.
pub fn radial_cdf(alpha: f64, radius: f64, r: f64) -> f64 {
    if r <= 0.0 {
        return 0.0;
    }
    if r >= radius {
        return 1.0;
    }
    // (cosh a - 1) = 2 sinh^2(a/2)
    (2.0 * (ln_sinh(0.5 * alpha * r) - ln_sinh(0.5 * alpha * radius))).exp()
}

/// Inverse of [`radial_cdf`]: `arccosh(1 + u (cosh(alpha R) - 1)) / alpha`.
pub fn sample_radius(alpha: f64, radius: f64, u: f64) -> Result<f64> {
    if !(alpha > 0.0) || !(radius > 0.0) {
        return domain(format!("need alpha > 0 and R > 0, got alpha = {alpha}, R = {radius}"));
    }
    if !(0.0..=1.0).contains(&u) {
        return domain(format!("quantile level u = {u} outside [0, 1]"));
    }
    if u == 0.0 {
        return Ok(0.0);
    }
    if u == 1.0 {
        return Ok(radius);
    }
    // t = u (cosh(aR) - 1) = 2 u sinh^2(aR / 2)
    let ln_t = (2.0 * u).ln() + 2.0 * ln_sinh(0.5 * alpha * radius);
    let acosh_1p = if ln_t > 40.0 {
        // arccosh(1 + t) = ln(2t) + ln(1 + 1/t) + O(t^-2), and 1/t < e^-40.
        LN_2 + ln_t
    } else {
        let t = ln_t.exp();
        (t + (t * (t + 2.0)).sqrt()).ln_1p()
    };
    Ok((acosh_1p / alpha).clamp(0.0, radius))
}

/// Hyperbolic distance through the cosine rule, written as
/// `cosh d = cosh(r1 - r2) + 2 sin^2(dtheta / 2) sinh r1 sinh r2`
/// so that no cancellation occurs.
pub fn hyperbolic_distance(a: &PolarPoint, b: &PolarPoint) -> f64 {
    let dtheta = angular_distance(a.theta, b.theta);
    let s = (0.5 * dtheta).sin();
    if a.r <= 0.0 || b.r <= 0.0 || s == 0.0 {
        return (a.r - b.r).abs();
    }
    if a.r + b.r < 700.0 {
        // x = cosh d - 1, kept separate from the 1 so short distances stay exact
        let h = (0.5 * (a.r - b.r)).sinh();
        let x = 2.0 * h * h + 2.0 * (s * a.r.sinh()) * (s * b.r.sinh());
        if x < 0.0 {
            note_clamp(-x);
        }
        let x = x.max(0.0);
        (x + x.sqrt() * (x + 2.0).sqrt()).ln_1p()
    } else {
        let ln_a = ln_cosh(a.r - b.r);
        let ln_b = LN_2 + 2.0 * s.ln() + ln_sinh(a.r) + ln_sinh(b.r);
        let l = log_add_exp(ln_a, ln_b);
        l + (1.0 + (1.0 - (-2.0 * l).exp()).sqrt()).ln()
    }
}

const PI_BELOW: f64 = f64::from_bits(PI.to_bits() - 1);

/// Largest relative angle at which vertices at radii `r1`, `r2` are within
/// distance `R`. Equals `pi` exactly iff `r1 + r2 <= R`.
///
/// Uses `arccos(1 - x) = 2 arcsin(sqrt(x / 2))` with
/// `x = 2 sinh((R + d)/2) sinh((R - d)/2) / (sinh r1 sinh r2)`, `d = |r1 - r2|`,
/// which is the cosine-rule argument with the cancellation removed.
pub fn threshold_angle(r1: f64, r2: f64, radius: f64) -> f64 {
    if r1 <= 0.0 || r2 <= 0.0 || r1 + r2 <= radius {
        return PI;
    }
    let d = (r1 - r2).abs();
    if d >= radius {
        return 0.0;
    }
    let ln_half = ln_sinh(0.5 * (radius + d)) + ln_sinh(0.5 * (radius - d)) - ln_sinh(r1) - ln_sinh(r2);
    let half = ln_half.exp();
    if half > 1.0 {
        note_clamp(half - 1.0);
    }
    (2.0 * half.min(1.0).sqrt().asin()).min(PI_BELOW)
}

/// Adjacency in the disk model: distance at most `R`.
#[inline]
pub fn polar_adjacent(a: &PolarPoint, b: &PolarPoint, radius: f64) -> bool {
    angular_distance(a.theta, b.theta) <= threshold_angle(a.r, b.r, radius)
}

/// Threshold angle rescaled to strip units, `(1/2) e^{R/2} threshold_angle`.
/// Only defined for `r1 + r2 >= R`.
pub fn delta_scaled(r1: f64, r2: f64, radius: f64) -> Result<f64> {
    if r1 + r2 < radius {
        return domain(format!("r1 + r2 = {} is below R = {radius}", r1 + r2));
    }
    if !(r1 > 0.0 && r2 > 0.0 && r1 <= radius && r2 <= radius) {
        return domain(format!("radii ({r1}, {r2}) outside (0, R]"));
    }
    Ok(0.5 * (0.5 * radius).exp() * threshold_angle(r1, r2, radius))
}

/// `a <= b` up to a few ulps of rounding in the evaluated expressions.
fn le_rounded(a: f64, b: f64) -> bool {
    a <= b + 4.0 * f64::EPSILON * a.abs().max(b.abs()).max(1.0)
}

/// `sqrt(2x) <= arccos(1 - x) <= sqrt(2x) + 1000 x^{3/2}` on `[0, 1]`.
pub fn arccos_bounds_hold(x: f64) -> Result<bool> {
    if !(0.0..=1.0).contains(&x) {
        return domain(format!("arccos bound needs x in [0, 1], got {x}"));
    }
    let v = (1.0 - x).acos();
    let lo = (2.0 * x).sqrt();
    Ok(le_rounded(lo, v) && le_rounded(v, lo + 1000.0 * x.powf(1.5)))
}

/// `1 + x/2 - 100 x^2 <= sqrt(1 + x) <= 1 + x/2` on `[-1, 1]`.
pub fn sqrt_bounds_hold(x: f64) -> Result<bool> {
    if !(-1.0..=1.0).contains(&x) {
        return domain(format!("sqrt bound needs x in [-1, 1], got {x}"));
    }
    let v = (1.0 + x).sqrt();
    Ok(le_rounded(1.0 + 0.5 * x - 100.0 * x * x, v) && le_rounded(v, 1.0 + 0.5 * x))
}

/// `1 - x^2/2 <= cos x <= 1 - x^2/2 + x^4/24` on `[0, 1]`.
pub fn cos_bounds_hold(x: f64) -> Result<bool> {
    if !(0.0..=1.0).contains(&x) {
        return domain(format!("cos bound needs x in [0, 1], got {x}"));
    }
    let v = x.cos();
    let base = 1.0 - 0.5 * x * x;
    Ok(le_rounded(base, v) && le_rounded(v, base + x.powi(4) / 24.0))
}

/// The three bounds `[arccos, sqrt, cos]` at a common point of `[0, 1]`.
pub fn appendix_bounds_check(x: f64) -> Result<[bool; 3]> {
    Ok([arccos_bounds_hold(x)?, sqrt_bounds_hold(x)?, cos_bounds_hold(x)?])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn radius_examples() {
        assert!((disk_radius(500.0, 2.0).unwrap() - 11.042_921_835_724_493).abs() < 1e-12);
        let nu = 3.7;
        assert!((disk_radius(std::f64::consts::E * nu, nu).unwrap() - 2.0).abs() < 1e-12);
        assert!(disk_radius(2.0, 2.0).is_err());
        assert!(KpkvbParams::new(2, 1.0, 2.0).is_err());
        assert!(KpkvbParams::new(0, 1.0, 2.0).is_err());
        assert!(KpkvbParams::new(10, 0.0, 2.0).is_err());
        assert!(KpkvbParams::new(10, 1.0, -1.0).is_err());
    }

    #[test]
    fn sample_radius_examples() {
        assert_eq!(sample_radius(1.0, 10.0, 0.0).unwrap(), 0.0);
        assert_eq!(sample_radius(1.0, 10.0, 1.0).unwrap(), 10.0);
        // arccosh(1 + 0.5 (cosh 10 - 1)) at 40 digits
        let r = sample_radius(1.0, 10.0, 0.5).unwrap();
        assert!((r - 9.306_943_608_995_371).abs() < 1e-12, "{r}");
        assert!(sample_radius(1.0, 10.0, 1.5).is_err());
        assert!(sample_radius(1.0, 10.0, -0.1).is_err());
        assert!(sample_radius(0.0, 10.0, 0.5).is_err());
    }

    #[test]
    fn sample_radius_inverts_cdf_even_for_huge_radius() {
        for &(alpha, radius) in &[(0.3, 5.0), (1.0, 30.0), (1.5, 900.0)] {
            for k in 1..100 {
                let u = k as f64 / 100.0;
                let r = sample_radius(alpha, radius, u).unwrap();
                assert!((radial_cdf(alpha, radius, r) - u).abs() < 1e-9, "alpha={alpha} R={radius} u={u}");
            }
        }
    }

    #[test]
    fn distance_examples() {
        let a = PolarPoint::new(3.0, 0.0);
        assert_eq!(hyperbolic_distance(&a, &a), 0.0);
        let b = PolarPoint::new(5.0, PI);
        assert!((hyperbolic_distance(&a, &b) - 8.0).abs() < 1e-12);
        // arccosh(cosh^2 5 - cos(0.1) sinh^2 5) at 40 digits
        let c = PolarPoint::new(5.0, 0.0);
        let d = PolarPoint::new(5.0, 0.1);
        assert!((hyperbolic_distance(&c, &d) - 4.043_011_811_562_158).abs() < 1e-12);
    }

    #[test]
    fn distance_log_space_branch_matches_direct_branch() {
        // radii sum just below / above the switch at 700
        let a = PolarPoint::new(349.9, 0.0);
        let b = PolarPoint::new(349.9, 1e-160);
        let far = PolarPoint::new(350.1, 0.3);
        let near = PolarPoint::new(349.9, 0.3);
        let d1 = hyperbolic_distance(&a, &near);
        let d2 = hyperbolic_distance(&PolarPoint::new(350.1, 0.0), &far);
        assert!((d2 - d1 - 0.4).abs() < 1e-9, "{d1} {d2}");
        // d = 2 asinh(sinh r sin(dtheta / 2)) ~ e^r * 1e-160 / 2
        let expect = 0.5 * (349.9f64 + (1e-160f64).ln()).exp();
        assert!((hyperbolic_distance(&a, &b) - expect).abs() < 1e-6 * expect);
    }

    #[test]
    fn threshold_angle_examples() {
        assert_eq!(threshold_angle(2.0, 3.0, 10.0), PI);
        assert_eq!(threshold_angle(0.0, 9.5, 10.0), PI);
        // arccos(cosh 10 / (cosh 10 + 1)) at 40 digits
        let t = threshold_angle(10.0, 10.0, 10.0);
        assert!((t - 0.013_475_384_176_940_817).abs() < 1e-15, "{t}");
        for &radius in &[10.0, 20.0, 30.0] {
            let ratio = threshold_angle(radius, radius, radius) / (2.0 * (-0.5 * radius).exp());
            assert!((ratio - 1.0).abs() < 1e-4, "R={radius}: {ratio}");
        }
    }

    #[test]
    fn threshold_angle_agrees_with_distance() {
        let radius = 12.0;
        for i in 1..=40 {
            for j in 1..=40 {
                let (r1, r2) = (radius * i as f64 / 40.0, radius * j as f64 / 40.0);
                let t = threshold_angle(r1, r2, radius);
                let antipodal = hyperbolic_distance(&PolarPoint::new(r1, 0.0), &PolarPoint::new(r2, PI));
                if (r1 + r2 - radius).abs() > 1e-9 {
                    assert_eq!(t == PI, antipodal <= radius, "r1={r1} r2={r2}");
                }
                if t < PI {
                    let at = hyperbolic_distance(&PolarPoint::new(r1, 0.0), &PolarPoint::new(r2, t));
                    assert!((at - radius).abs() < 1e-9, "r1={r1} r2={r2} d={at}");
                }
            }
        }
    }

    #[test]
    fn delta_scaled_examples() {
        // (1/2) e^5 arccos(cosh 10 / (cosh 10 + 1)) at 40 digits
        let d = delta_scaled(10.0, 10.0, 10.0).unwrap();
        assert!((d - 0.999_962_167_910_330_3).abs() < 1e-12, "{d}");
        let d30 = delta_scaled(30.0, 30.0, 30.0).unwrap();
        assert!((d30 - 1.0).abs() < 1e-3);
        assert!(delta_scaled(3.0, 4.0, 10.0).is_err());
    }

    #[test]
    fn appendix_bounds_examples() {
        assert_eq!(appendix_bounds_check(0.0).unwrap(), [true; 3]);
        assert_eq!(appendix_bounds_check(1.0).unwrap(), [true; 3]);
        assert!((0.0f64).acos() >= 2f64.sqrt());
        assert!(appendix_bounds_check(-0.5).is_err());
        assert!(sqrt_bounds_hold(-0.5).unwrap());
        assert!(sqrt_bounds_hold(1.5).is_err());
        assert!(arccos_bounds_hold(1.2).is_err());
        assert!(cos_bounds_hold(-0.1).is_err());
    }

    #[test]
    fn appendix_bounds_dense_sweep() {
        for k in 0..=10_000 {
            let x = k as f64 / 1e4;
            assert_eq!(appendix_bounds_check(x).unwrap(), [true; 3], "x = {x}");
            assert!(sqrt_bounds_hold(-x).unwrap(), "x = {}", -x);
        }
    }

    #[test]
    fn angles_normalise_into_half_open_interval() {
        assert_eq!(normalize_angle(PI), PI);
        assert!((normalize_angle(-PI) - PI).abs() < 1e-15);
        assert!((normalize_angle(3.0 * PI / 2.0) + PI / 2.0).abs() < 1e-15);
        assert!((angular_distance(-3.0, 3.0) - (TAU - 6.0)).abs() < 1e-15);
    }
}
