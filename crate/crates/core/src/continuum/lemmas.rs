//! Randomised checks of the elementary geometric facts about `Gamma`: the
//! two "cross" properties and box adjacency.

use rand::Rng as _;
use serde::{Deserialize, Serialize};

use super::{box_bounds, box_index, gamma_adjacent, neighbour_boxes, BoxIndex};
use crate::geometry::HalfPlanePoint;
use crate::rng::rng_from;

/// Result of a randomised sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sweep {
    pub configurations: u64,
    pub violations: u64,
}

impl Sweep {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

/// True if the vertical line through `k` meets `[i, j]` strictly below `k`.
pub fn above_segment(k: &HalfPlanePoint, i: &HalfPlanePoint, j: &HalfPlanePoint) -> bool {
    let (lo, hi) = if i.x <= j.x { (i, j) } else { (j, i) };
    if k.x < lo.x || k.x > hi.x {
        return false;
    }
    if lo.x == hi.x {
        return k.y > lo.y.min(hi.y);
    }
    let t = (k.x - lo.x) / (hi.x - lo.x);
    k.y > lo.y + t * (hi.y - lo.y)
}

fn orient(a: &HalfPlanePoint, b: &HalfPlanePoint, c: &HalfPlanePoint) -> f64 {
    (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)
}

/// True if the open segments `[a, b]` and `[c, d]` cross at a single
/// interior point.
pub fn segments_cross(a: &HalfPlanePoint, b: &HalfPlanePoint, c: &HalfPlanePoint, d: &HalfPlanePoint) -> bool {
    let (o1, o2) = (orient(a, b, c), orient(a, b, d));
    let (o3, o4) = (orient(c, d, a), orient(c, d, b));
    o1 * o2 < 0.0 && o3 * o4 < 0.0
}

/// For an edge `ij` and a point `k` above it, `k` is adjacent to `i` or `j`.
/// Vacuously true when the premise fails.
pub fn cross_i_holds(i: &HalfPlanePoint, j: &HalfPlanePoint, k: &HalfPlanePoint) -> bool {
    !(gamma_adjacent(i, j) && above_segment(k, i, j)) || gamma_adjacent(k, i) || gamma_adjacent(k, j)
}

/// For crossing edges `ij` and `kl`, one of the four cross pairs is an edge.
pub fn cross_ii_holds(i: &HalfPlanePoint, j: &HalfPlanePoint, k: &HalfPlanePoint, l: &HalfPlanePoint) -> bool {
    if !(gamma_adjacent(i, j) && gamma_adjacent(k, l) && segments_cross(i, j, k, l)) {
        return true;
    }
    [(i, k), (i, l), (j, k), (j, l)].iter().any(|(a, b)| gamma_adjacent(a, b))
}

/// Every point of every neighbour box of `p`'s box is adjacent to `p`;
/// checked for `q`, vacuously true if `q` is in none of them.
pub fn box_pair_holds(p: &HalfPlanePoint, q: &HalfPlanePoint) -> bool {
    let bq = box_index(q);
    !neighbour_boxes(box_index(p)).contains(&bq) || gamma_adjacent(p, q)
}

const MAX_Y: f64 = 6.0;

fn reach(a: &HalfPlanePoint, y: f64) -> f64 {
    ((a.y + y) / 2.0).exp()
}

/// Draws a point adjacent to `a`, uniformly over its ball within height `MAX_Y`.
fn partner(a: &HalfPlanePoint, rng: &mut impl rand::Rng) -> HalfPlanePoint {
    let y = rng.random_range(0.0..MAX_Y);
    HalfPlanePoint::new(a.x + rng.random_range(-1.0..1.0) * reach(a, y), y)
}

/// Part (i) on `count` random triples whose edge premise holds.
pub fn sweep_cross_i(count: u64, seed: u64) -> Sweep {
    let mut rng = rng_from(seed, &[0x6372_6f73, 1]);
    let mut violations = 0;
    for _ in 0..count {
        let i = HalfPlanePoint::new(rng.random_range(-5.0..5.0), rng.random_range(0.0..MAX_Y));
        let j = partner(&i, &mut rng);
        let t: f64 = rng.random();
        let x = i.x + t * (j.x - i.x);
        let y_seg = i.y + t * (j.y - i.y);
        let k = HalfPlanePoint::new(x, y_seg + rng.random_range(0.0..MAX_Y) + f64::EPSILON);
        if !cross_i_holds(&i, &j, &k) {
            violations += 1;
        }
    }
    Sweep { configurations: count, violations }
}

/// Part (ii) on `count` random quadruples with two crossing edges. The
/// second edge passes through a random point of the first.
pub fn sweep_cross_ii(count: u64, seed: u64) -> Sweep {
    let mut rng = rng_from(seed, &[0x6372_6f73, 2]);
    let (mut accepted, mut violations) = (0, 0);
    while accepted < count {
        let i = HalfPlanePoint::new(rng.random_range(-5.0..5.0), rng.random_range(0.0..MAX_Y));
        let j = partner(&i, &mut rng);
        let s: f64 = rng.random();
        let c = HalfPlanePoint::new(i.x + s * (j.x - i.x), i.y + s * (j.y - i.y));
        let k = partner(&c, &mut rng);
        let tau = rng.random_range(0.0..3.0);
        let ly = c.y + tau * (c.y - k.y);
        if ly <= 0.0 {
            continue;
        }
        let l = HalfPlanePoint::new(c.x + tau * (c.x - k.x), ly);
        if !gamma_adjacent(&k, &l) || !segments_cross(&i, &j, &k, &l) {
            continue;
        }
        accepted += 1;
        if !cross_ii_holds(&i, &j, &k, &l) {
            violations += 1;
        }
    }
    Sweep { configurations: count, violations }
}

fn point_in(b: BoxIndex, rng: &mut impl rand::Rng) -> HalfPlanePoint {
    let (x0, x1, y0, y1) = box_bounds(b);
    // (0, 1] so that the open lower/left edges are never hit
    let (u, v) = (1.0 - rng.random::<f64>(), 1.0 - rng.random::<f64>());
    HalfPlanePoint::new(x0 + u * (x1 - x0), y0 + v * (y1 - y0))
}

/// Box adjacency on `count` random pairs: `p` uniform in a random box with
/// `i < 12`, `q` uniform in a random neighbour box.
pub fn sweep_boxes(count: u64, seed: u64) -> Sweep {
    let mut rng = rng_from(seed, &[0x0062_6f78, 0]);
    let mut violations = 0;
    for _ in 0..count {
        let b = BoxIndex { i: rng.random_range(0..12), j: rng.random_range(-64..64) };
        let p = point_in(b, &mut rng);
        let nbrs = neighbour_boxes(b);
        let q = point_in(nbrs[rng.random_range(0..nbrs.len())], &mut rng);
        if !gamma_adjacent(&p, &q) {
            violations += 1;
        }
    }
    Sweep { configurations: count, violations }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn segment_predicates() {
        let a = HalfPlanePoint::new(0.0, 1.0);
        let b = HalfPlanePoint::new(2.0, 1.0);
        assert!(above_segment(&HalfPlanePoint::new(1.0, 1.5), &a, &b));
        assert!(!above_segment(&HalfPlanePoint::new(1.0, 0.5), &a, &b));
        assert!(!above_segment(&HalfPlanePoint::new(3.0, 5.0), &a, &b));
        let c = HalfPlanePoint::new(1.0, 0.5);
        let d = HalfPlanePoint::new(1.0, 2.0);
        assert!(segments_cross(&a, &b, &c, &d));
        assert!(!segments_cross(&a, &c, &b, &d));
    }

    #[test]
    fn sweeps_find_no_violations() {
        assert!(sweep_cross_i(20_000, 1).passed());
        assert!(sweep_cross_ii(5_000, 1).passed());
        assert!(sweep_boxes(50_000, 1).passed());
    }

    #[test]
    fn box_pair_check_is_vacuous_outside_neighbours() {
        let p = HalfPlanePoint::new(0.25, 0.5);
        assert!(box_pair_holds(&p, &HalfPlanePoint::new(100.0, 0.5)));
        assert!(box_pair_holds(&p, &HalfPlanePoint::new(0.75, 0.5)));
    }
}
