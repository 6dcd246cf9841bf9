use super::{for_each_neighbour, PointSource};
use crate::geometry::HalfPlanePoint;

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// The rightmost-exploration sequence from `(0, y0)`.
///
/// With `p_i^+ = (x_i, y_i)` and `p_i^- = (-x_i, y_i)`, step `i` collects the
/// points strictly right of `x_i` in the ball of `p_i^+` and strictly left of
/// `-x_i` in the ball of `p_i^-`; `x_{i+1}` is their largest `|x|` and
/// `y_{i+1}` their largest height (possibly taken at different points). The
/// sequence stops when the set is empty. Points at exactly `x = 0` are
/// treated as lying at the smallest positive `x`.
pub fn explore_rightmost(y0: f64, src: &dyn PointSource) -> Vec<(f64, f64)> {
    let window = src.window();
    let (x_lim, y_lim) = (window.half_width(), window.height());
    let mut seq = vec![(0.0, y0)];
    loop {
        let (xi, yi) = *seq.last().expect("sequence starts non-empty");
        let mut best: Option<(f64, f64)> = None;
        let mut take = |q: HalfPlanePoint| {
            let ax = if q.x == 0.0 { f64::from_bits(1) } else { q.x.abs() };
            let (bx, by) = best.unwrap_or((f64::NEG_INFINITY, f64::NEG_INFINITY));
            best = Some((bx.max(ax), by.max(q.y)));
        };
        for_each_neighbour(src, HalfPlanePoint::new(xi, yi), x_lim, y_lim, &mut |q| {
            if q.x > xi || (xi == 0.0 && q.x == 0.0) {
                take(q);
            }
        });
        for_each_neighbour(src, HalfPlanePoint::new(-xi, yi), x_lim, y_lim, &mut |q| {
            if q.x < -xi {
                take(q);
            }
        });
        match best {
            Some(next) => seq.push(next),
            None => return seq,
        }
    }
}

/// Lower bound `exp(-4 lambda e^{-x/2})` on `P(Delta <= x)` for the height
/// increments at `alpha = 1`: the increments are stochastically dominated by
/// a Gumbel law with location `2 ln(4 lambda)` and scale 2.
pub fn increment_cdf_bound(lambda: f64, x: f64) -> f64 {
    (-4.0 * lambda * (-x / 2.0).exp()).exp()
}

/// Mean `2 ln(4 lambda) + 2 gamma` of the dominating Gumbel law.
pub fn increment_mean_bound(lambda: f64) -> f64 {
    2.0 * (4.0 * lambda).ln() + 2.0 * EULER_GAMMA
}
