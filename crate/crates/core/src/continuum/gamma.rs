use std::f64::consts::LN_2;

use rayon::prelude::*;

use super::ContinuumSample;
use crate::error::{domain, Result};
use crate::geometry::HalfPlanePoint;
use crate::graph::Graph;
use crate::index::BandIndex;

/// The `Gamma` rule `|x - x'| < e^{(y + y')/2}` (strict).
#[inline]
pub fn gamma_adjacent(p: &HalfPlanePoint, q: &HalfPlanePoint) -> bool {
    (p.x - q.x).abs() < ((p.y + q.y) / 2.0).exp()
}

/// `min(|x - x'|, c - |x - x'|)` for points of `[-c/2, c/2]`.
#[inline]
pub fn wrap_distance(x: f64, x2: f64, circumference: f64) -> f64 {
    let d = (x - x2).abs();
    d.min(circumference - d)
}

/// The torus rule `|x - x'|_c <= e^{(y + y')/2}` (non-strict).
#[inline]
pub fn torus_adjacent(p: &HalfPlanePoint, q: &HalfPlanePoint, circumference: f64) -> bool {
    wrap_distance(p.x, q.x, circumference) <= ((p.y + q.y) / 2.0).exp()
}

fn collect_edges(
    points: &[HalfPlanePoint],
    index: &BandIndex,
    adjacent: impl Fn(&HalfPlanePoint, &HalfPlanePoint) -> bool + Sync,
) -> Graph {
    let chunks: Vec<Vec<(u32, u32)>> = (0..points.len())
        .into_par_iter()
        .with_min_len(256)
        .map(|i| {
            let p = &points[i];
            let mut out = Vec::new();
            index.query(
                p.x,
                |_, y_max| ((p.y + y_max) / 2.0).exp(),
                |j| {
                    if (j as usize) > i && adjacent(p, &points[j as usize]) {
                        out.push((i as u32, j));
                    }
                },
            );
            out
        })
        .collect();
    Graph::from_edges(points.len(), chunks.into_iter().flatten())
}

/// `Gamma(P)` on the sample, labels in sample order.
pub fn gamma_graph(sample: &ContinuumSample) -> Graph {
    collect_edges(&sample.points, sample.index(), gamma_adjacent)
}

/// The wrap-around graph on the circle of length `circumference`; all
/// points must satisfy `|x| <= circumference / 2`.
pub fn gamma_graph_torus(sample: &ContinuumSample, circumference: f64) -> Result<Graph> {
    if !(circumference > 0.0) {
        return domain(format!("circumference must be positive, got {circumference}"));
    }
    if let Some(p) = sample.points.iter().find(|p| p.x.abs() > circumference / 2.0) {
        return domain(format!("point x = {} lies outside [-c/2, c/2] for c = {circumference}", p.x));
    }
    let index = BandIndex::new(sample.points.iter().map(|p| (p.x, p.y)), LN_2, Some(circumference));
    Ok(collect_edges(&sample.points, &index, |p, q| torus_adjacent(p, q, circumference)))
}
