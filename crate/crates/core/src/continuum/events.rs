use std::cmp::Ordering;
use std::collections::{BinaryHeap, HashSet, VecDeque};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{
    for_each_neighbour, point_key, sample_continuum, ContinuumParams, PoissonField, PointSource, Window,
};
use crate::error::{domain, Result};
use crate::geometry::HalfPlanePoint;
use crate::rng::replica_seed;
use crate::stats::Proportion;

/// Heap entry ordered by `key`.
struct Ranked(f64, HalfPlanePoint);

impl PartialEq for Ranked {
    fn eq(&self, other: &Self) -> bool {
        self.0.total_cmp(&other.0) == Ordering::Equal
    }
}
impl Eq for Ranked {}
impl PartialOrd for Ranked {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Ranked {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.total_cmp(&other.0)
    }
}

/// `T(y; h, w)`: the planted point `(0, y)` is joined to a point with height
/// in `[h, 2h]` by a path inside `[-w e^h, w e^h] x [0, 2h]`.
pub fn event_t(y: f64, h: f64, w: f64, src: &dyn PointSource) -> Result<bool> {
    if !(h > 0.0 && w > 0.0) {
        return domain(format!("T needs h > 0 and w > 0, got h={h}, w={w}"));
    }
    if !(0.0..=2.0 * h).contains(&y) {
        return domain(format!("T needs 0 <= y <= 2h, got y={y}, h={h}"));
    }
    let x_lim = w * h.exp();
    src.window().require_cover(x_lim, 2.0 * h)?;
    if y >= h {
        return Ok(true);
    }
    let mut seen = HashSet::new();
    let mut heap = BinaryHeap::new();
    heap.push(Ranked(y, HalfPlanePoint::new(0.0, y)));
    while let Some(Ranked(_, p)) = heap.pop() {
        let mut found = false;
        for_each_neighbour(src, p, x_lim, 2.0 * h, &mut |q| {
            if !found && seen.insert(point_key(&q)) {
                found = q.y >= h;
                heap.push(Ranked(q.y, q));
            }
        });
        if found {
            return Ok(true);
        }
    }
    Ok(false)
}

/// `U(y; n, h)`: within `Gamma` of the points in `[-e^h, e^h] x [0, h]` plus
/// `(0, y)`, the component of `(0, y)` lies in `[-n, n] x [0, n]` and has at
/// most `n` vertices (the planted point included).
pub fn event_u(y: f64, n: f64, h: f64, src: &dyn PointSource) -> Result<bool> {
    if !(h >= n && n >= y && y >= 0.0) {
        return domain(format!("U needs h >= n >= y >= 0, got h={h}, n={n}, y={y}"));
    }
    let x_lim = h.exp();
    src.window().require_cover(x_lim, h)?;
    if n < 1.0 {
        return Ok(false);
    }
    let mut seen = HashSet::new();
    let mut queue = VecDeque::from([HalfPlanePoint::new(0.0, y)]);
    let mut size = 1.0;
    while let Some(p) = queue.pop_front() {
        let mut escaped = false;
        for_each_neighbour(src, p, x_lim, h, &mut |q| {
            if escaped || !seen.insert(point_key(&q)) {
                return;
            }
            size += 1.0;
            escaped = q.x.abs() > n || q.y > n || size > n;
            queue.push_back(q);
        });
        if escaped {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `C_{w,h}`: a path with all heights at most `h` joins a point of
/// `[-w e^h, -(w-1) e^h] x [0, h]` to a point of `[(w-1) e^h, w e^h] x [0, h]`.
/// Paths are confined to the simulated strip `|x| <= w e^h`.
pub fn event_c(w: f64, h: f64, src: &dyn PointSource) -> Result<bool> {
    if !(w >= 1.0 && h > 0.0) {
        return domain(format!("C needs w >= 1 and h > 0, got w={w}, h={h}"));
    }
    let eh = h.exp();
    let x_lim = w * eh;
    let target = (w - 1.0) * eh;
    src.window().require_cover(x_lim, h)?;
    let mut seen = HashSet::new();
    let mut heap = BinaryHeap::new();
    let mut found = false;
    src.for_each_in_rect(-x_lim, -target, 0.0, h, &mut |q| {
        found |= q.x >= target;
        seen.insert(point_key(&q));
        heap.push(Ranked(q.x, q));
    });
    while let Some(Ranked(_, p)) = heap.pop() {
        if found {
            break;
        }
        for_each_neighbour(src, p, x_lim, h, &mut |q| {
            if !found && seen.insert(point_key(&q)) {
                found = q.x >= target;
                heap.push(Ranked(q.x, q));
            }
        });
    }
    Ok(found)
}

/// One of the finite-window events with its parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "event")]
pub enum EventKind {
    T { y: f64, h: f64, w: f64 },
    U { y: f64, n: f64, h: f64 },
    C { w: f64, h: f64 },
}

impl EventKind {
    pub fn name(&self) -> &'static str {
        match self {
            EventKind::T { .. } => "T",
            EventKind::U { .. } => "U",
            EventKind::C { .. } => "C",
        }
    }

    /// The smallest window the event reads.
    pub fn window(&self) -> Result<Window> {
        match *self {
            EventKind::T { h, w, .. } => Window::new(w * h.exp(), 2.0 * h),
            EventKind::U { h, .. } => Window::new(h.exp(), h),
            EventKind::C { w, h } => Window::new(w * h.exp(), h),
        }
    }

    pub fn evaluate(&self, src: &dyn PointSource) -> Result<bool> {
        match *self {
            EventKind::T { y, h, w } => event_t(y, h, w, src),
            EventKind::U { y, n, h } => event_u(y, n, h, src),
            EventKind::C { w, h } => event_c(w, h, src),
        }
    }
}

/// Samples above this expected size are read lazily.
pub(crate) const EAGER_LIMIT: f64 = 2e6;

/// Evaluates `kind` on a fresh realisation for replica seed `seed`, choosing
/// an eager sample or a lazy field by the expected point count.
pub(crate) fn evaluate_replica(kind: &EventKind, params: ContinuumParams, seed: u64) -> Result<bool> {
    let window = kind.window()?;
    if params.mass(-window.half_width(), window.half_width(), 0.0, window.height()) <= EAGER_LIMIT {
        kind.evaluate(&sample_continuum(params, window, seed))
    } else {
        kind.evaluate(&PoissonField::new(params, window, seed))
    }
}

/// Monte Carlo probability of an event with its 95% Wilson interval.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EventEstimate {
    pub event: String,
    pub params: serde_json::Value,
    pub p_hat: f64,
    pub ci: [f64; 2],
    pub replicas: usize,
    pub seed: u64,
}

/// Estimates `P(kind)` from `replicas` independent realisations.
pub fn estimate_event(kind: EventKind, params: ContinuumParams, replicas: usize, seed: u64) -> Result<EventEstimate> {
    let hits = (0..replicas)
        .into_par_iter()
        .map(|k| evaluate_replica(&kind, params, replica_seed(seed, k)))
        .collect::<Result<Vec<bool>>>()?;
    let prop = Proportion::from_indicators(&hits);
    let mut p = serde_json::to_value(kind)?;
    p["alpha"] = params.alpha().into();
    p["lambda"] = params.lambda().into();
    if let Some(obj) = p.as_object_mut() {
        obj.remove("event");
    }
    Ok(EventEstimate { event: kind.name().into(), params: p, p_hat: prop.p_hat, ci: prop.ci, replicas, seed })
}
