use std::f64::consts::LN_2;

use serde::{Deserialize, Serialize};

use super::ContinuumParams;
use crate::geometry::HalfPlanePoint;

/// Box `R_{i,j} = (j 2^{i-1}, (j+1) 2^{i-1}] x (i ln 2, (i+1) ln 2]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BoxIndex {
    pub i: u32,
    pub j: i64,
}

/// The box containing `p`; the line `y = 0` belongs to row 0.
pub fn box_index(p: &HalfPlanePoint) -> BoxIndex {
    let i = ((p.y / LN_2).ceil() - 1.0).max(0.0) as u32;
    let width = 2f64.powi(i as i32 - 1);
    let j = (p.x / width).ceil() as i64 - 1;
    BoxIndex { i, j }
}

/// `(x0, x1, y0, y1)`: the box is `(x0, x1] x (y0, y1]`.
pub fn box_bounds(b: BoxIndex) -> (f64, f64, f64, f64) {
    let width = 2f64.powi(b.i as i32 - 1);
    (b.j as f64 * width, (b.j + 1) as f64 * width, b.i as f64 * LN_2, (b.i + 1) as f64 * LN_2)
}

/// The boxes every point of which is adjacent to every point of `b`:
/// the parent, both horizontal neighbours and (for `i >= 1`) both children.
pub fn neighbour_boxes(b: BoxIndex) -> Vec<BoxIndex> {
    let BoxIndex { i, j } = b;
    let mut out = vec![
        BoxIndex { i: i + 1, j: j.div_euclid(2) },
        BoxIndex { i, j: j - 1 },
        BoxIndex { i, j: j + 1 },
    ];
    if i >= 1 {
        out.push(BoxIndex { i: i - 1, j: 2 * j });
        out.push(BoxIndex { i: i - 1, j: 2 * j + 1 });
    }
    out
}

/// `E|R_{i,j} ∩ P| = (lambda / alpha) 2^{i-1} (2^{-alpha i} - 2^{-alpha (i+1)})`.
pub fn expected_box_count(params: &ContinuumParams, i: u32) -> f64 {
    let a = params.alpha();
    let i = i as f64;
    params.lambda() / a * 2f64.powf(i - 1.0) * (2f64.powf(-a * i) - 2f64.powf(-a * (i + 1.0)))
}
