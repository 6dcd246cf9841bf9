use std::cell::RefCell;
use std::collections::HashMap;
use std::f64::consts::LN_2;

use rand::Rng as _;
use rand_distr::{Binomial, Distribution};

use super::{ContinuumParams, PointSource, Window};
use crate::geometry::HalfPlanePoint;
use crate::rng::{derive, poisson, rng_from};

const TAG_COUNT: u64 = 21;
const TAG_SPLIT: u64 = 22;
const TAG_LEAF: u64 = 23;

/// Nodes at the top level of a row carry at most this expected count.
const MAX_TOP_MASS: f64 = 1e12;
const MAX_DEPTH: u32 = 120;

/// A Poisson realisation of `P_{alpha,lambda}` on a window of any size,
/// sampled on demand.
///
/// The window is cut into rows of height `ln 2` (the box rows). Within a row
/// the `x`-range is split by a binary tree whose leaves are about as wide as
/// the boxes of that row. A node's count is either an independent Poisson
/// variable (top level) or a binomial half of its parent's count; leaves
/// place their points uniformly. Every random draw is seeded by the node's
/// position, so the realisation does not depend on the order of queries.
#[derive(Debug)]
pub struct PoissonField {
    params: ContinuumParams,
    window: Window,
    seed: u64,
    rows: Vec<Row>,
    counts: RefCell<HashMap<(u32, u128), u64>>,
}

#[derive(Debug, Clone, Copy)]
struct Row {
    y0: f64,
    y1: f64,
    top_depth: u32,
    leaf_depth: u32,
}

impl PoissonField {
    pub fn new(params: ContinuumParams, window: Window, seed: u64) -> Self {
        let (w, h) = (window.half_width(), window.height());
        let n_rows = ((h / LN_2).ceil() as usize).max(1);
        let rows = (0..n_rows)
            .map(|r| {
                let y0 = r as f64 * LN_2;
                let y1 = ((r + 1) as f64 * LN_2).min(h);
                let mass = params.mass(-w, w, y0, y1);
                let top_depth = (mass / MAX_TOP_MASS).log2().ceil().max(0.0) as u32;
                let box_width = 2f64.powi(r as i32 - 1);
                let leaf_depth = ((2.0 * w / box_width).log2().ceil().max(0.0) as u32).max(top_depth).min(MAX_DEPTH);
                Row { y0, y1, top_depth: top_depth.min(leaf_depth), leaf_depth }
            })
            .collect();
        PoissonField { params, window, seed, rows, counts: RefCell::new(HashMap::new()) }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    fn node_width(&self, depth: u32) -> f64 {
        2.0 * self.window.half_width() / 2f64.powi(depth as i32)
    }

    /// Left end of node `id`, computed from its offset to the window centre so
    /// that narrow nodes near `x = 0` stay exact in huge windows.
    fn node_left(&self, id: u128, depth: u32) -> f64 {
        let k = (id - (1u128 << depth)) as i128;
        let m = 2 * k - (1i128 << depth);
        self.window.half_width() * (m as f64) * 2f64.powi(-(depth as i32))
    }

    fn node_seed(&self, tag: u64, row: u32, id: u128) -> u64 {
        derive(self.seed, &[tag, row as u64, (id >> 64) as u64, id as u64])
    }

    fn top_count(&self, r: u32, id: u128) -> u64 {
        let row = self.rows[r as usize];
        let w = self.node_width(row.top_depth);
        let mass = self.params.mass(0.0, w, row.y0, row.y1);
        poisson(mass, &mut rng_from(self.node_seed(TAG_COUNT, r, id), &[]))
    }

    /// Count of the left child of a node holding `count` points.
    fn left_count(&self, r: u32, id: u128, count: u64) -> u64 {
        if count == 0 {
            return 0;
        }
        if let Some(&c) = self.counts.borrow().get(&(r, id)) {
            return c;
        }
        let mut rng = rng_from(self.node_seed(TAG_SPLIT, r, id), &[]);
        let c = Binomial::new(count, 0.5).expect("valid binomial").sample(&mut rng);
        self.counts.borrow_mut().insert((r, id), c);
        c
    }

    fn descend(
        &self,
        r: u32,
        id: u128,
        depth: u32,
        count: u64,
        rect: [f64; 4],
        visit: &mut dyn FnMut(HalfPlanePoint),
    ) {
        let row = self.rows[r as usize];
        let width = self.node_width(depth);
        let lo = self.node_left(id, depth);
        let hi = lo + width;
        if count == 0 || hi < rect[0] || lo > rect[1] {
            return;
        }
        if depth == row.leaf_depth {
            let mut rng = rng_from(self.node_seed(TAG_LEAF, r, id), &[]);
            let a = self.params.alpha();
            let dy = row.y1 - row.y0;
            for _ in 0..count {
                let x = lo + width * rng.random::<f64>();
                let y = row.y0 + super::sample::truncated_exp_quantile(a, dy, rng.random::<f64>());
                if x >= rect[0] && x <= rect[1] && y >= rect[2] && y <= rect[3] {
                    visit(HalfPlanePoint::new(x, y));
                }
            }
            return;
        }
        let left = self.left_count(r, id, count);
        self.descend(r, id << 1, depth + 1, left, rect, visit);
        self.descend(r, (id << 1) | 1, depth + 1, count - left, rect, visit);
    }
}

impl PointSource for PoissonField {
    fn params(&self) -> ContinuumParams {
        self.params
    }

    fn window(&self) -> Window {
        self.window
    }

    fn for_each_in_rect(&self, x0: f64, x1: f64, y0: f64, y1: f64, visit: &mut dyn FnMut(HalfPlanePoint)) {
        let w = self.window.half_width();
        let (x0, x1) = (x0.max(-w), x1.min(w));
        if x0 > x1 {
            return;
        }
        for (r, row) in self.rows.iter().enumerate() {
            if row.y1 < y0 || row.y0 > y1 {
                continue;
            }
            let r = r as u32;
            let width = self.node_width(row.top_depth);
            // one extra node on each side absorbs rounding in `x + w`
            let first = (((x0 + w) / width).floor().max(1.0) as u128) - 1;
            let last = (((x1 + w) / width).floor() as u128 + 1).min((1u128 << row.top_depth) - 1);
            for k in first..=last {
                let id = (1u128 << row.top_depth) | k;
                let count = self.top_count(r, id);
                self.descend(r, id, row.top_depth, count, [x0, x1, y0, y1], visit);
            }
        }
    }
}
