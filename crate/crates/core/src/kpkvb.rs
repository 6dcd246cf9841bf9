//! Sampling and graph construction for `G(N; alpha, nu)` and its
//! Poissonized variant.
//!
//! Vertices are generated from a single i.i.d. stream of `(u, theta)` pairs,
//! the radius being `sample_radius(alpha, R, u)`. The Poissonized set takes the
//! first `Z ~ Po(N)` items of the same stream, so the usual coupling (`G` uses
//! `X_1..X_N`, `G_Po` uses `X_1..X_Z`) holds exactly for equal seeds.

use std::f64::consts::{LN_2, PI, TAU};
use std::io::{self, Write};

use rand::Rng as _;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::geometry::{polar_adjacent, sample_radius, threshold_angle, KpkvbParams, PolarPoint};
use crate::graph::Graph;
use crate::index::BandIndex;
use crate::rng::{poisson, rng_from};

const STREAM_POINTS: u64 = 1;
const STREAM_COUNT: u64 = 2;

/// The raw uniforms behind a vertex set: a quantile level for the radius and
/// the angle. Mapping the same uniforms through different parameters gives
/// the quantile coupling used in monotonicity experiments.
#[derive(Debug, Clone, PartialEq)]
pub struct VertexUniforms {
    pub u: Vec<f64>,
    pub theta: Vec<f64>,
    pub seed: u64,
}

impl VertexUniforms {
    /// First `count` items of the vertex stream of `seed`.
    pub fn draw(count: usize, seed: u64) -> Self {
        let mut rng = rng_from(seed, &[STREAM_POINTS]);
        let mut u = Vec::with_capacity(count);
        let mut theta = Vec::with_capacity(count);
        for _ in 0..count {
            u.push(rng.random::<f64>());
            // 1 - U lies in (0, 1], so the angle lies in (-pi, pi]
            theta.push(-PI + TAU * (1.0 - rng.random::<f64>()));
        }
        VertexUniforms { u, theta, seed }
    }

    pub fn len(&self) -> usize {
        self.u.len()
    }

    pub fn is_empty(&self) -> bool {
        self.u.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VertexSet {
    pub points: Vec<PolarPoint>,
    pub params: KpkvbParams,
    pub seed: u64,
}

impl VertexSet {
    /// Maps uniforms through the radial quantile function of `params`.
    pub fn from_uniforms(params: KpkvbParams, uniforms: &VertexUniforms) -> Result<Self> {
        let radius = params.radius();
        let points = uniforms
            .u
            .iter()
            .zip(&uniforms.theta)
            .map(|(&u, &t)| Ok(PolarPoint { r: sample_radius(params.alpha(), radius, u)?, theta: t }))
            .collect::<Result<Vec<_>>>()?;
        Ok(VertexSet { points, params, seed: uniforms.seed })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn radius(&self) -> f64 {
        self.params.radius()
    }

    /// Rotates every angle by `phi`.
    pub fn rotated(&self, phi: f64) -> Self {
        let points = self.points.iter().map(|p| PolarPoint::new(p.r, p.theta + phi)).collect();
        VertexSet { points, ..self.clone() }
    }

    /// CSV with header `label,r,theta`.
    pub fn write_csv(&self, mut out: impl Write) -> io::Result<()> {
        writeln!(out, "label,r,theta")?;
        for (i, p) in self.points.iter().enumerate() {
            writeln!(out, "{i},{},{}", crate::fmt_sig(p.r), crate::fmt_sig(p.theta))?;
        }
        Ok(())
    }
}

/// `N` i.i.d. vertices of `G(N; alpha, nu)`.
pub fn sample_vertices(params: KpkvbParams, seed: u64) -> VertexSet {
    VertexSet::from_uniforms(params, &VertexUniforms::draw(params.n(), seed))
        .expect("uniforms in [0, 1) always map to valid radii")
}

/// The vertex count `Z ~ Po(N)` used by [`sample_vertices_poissonized`].
pub fn poissonized_count(params: KpkvbParams, seed: u64) -> usize {
    poisson(params.n() as f64, &mut rng_from(seed, &[STREAM_COUNT])) as usize
}

/// `Z ~ Po(N)` vertices sharing the i.i.d. stream of [`sample_vertices`].
pub fn sample_vertices_poissonized(params: KpkvbParams, seed: u64) -> VertexSet {
    VertexSet::from_uniforms(params, &VertexUniforms::draw(poissonized_count(params, seed), seed))
        .expect("uniforms in [0, 1) always map to valid radii")
}

/// Builds the angular band index over `(theta, y = R - r)`.
fn disk_index(vertices: &VertexSet) -> BandIndex {
    let radius = vertices.radius();
    BandIndex::new(vertices.points.iter().map(|p| (p.theta, (radius - p.r).max(0.0))), LN_2, Some(TAU))
}

/// Calls `edge(i, j)` with `i < j` for every pair at distance at most `R`.
/// Pairs are produced per vertex in parallel, then replayed in order.
pub fn for_each_edge(vertices: &VertexSet, mut edge: impl FnMut(u32, u32)) {
    let radius = vertices.radius();
    let index = disk_index(vertices);
    let pts = &vertices.points;
    let chunks: Vec<Vec<(u32, u32)>> = (0..pts.len())
        .into_par_iter()
        .with_min_len(256)
        .map(|i| {
            let p = &pts[i];
            let mut out = Vec::new();
            index.query(
                p.theta,
                // the widest angle in a band is attained at its smallest radius
                |_, y_max| threshold_angle(p.r, radius - y_max, radius),
                |j| {
                    if (j as usize) > i && polar_adjacent(p, &pts[j as usize], radius) {
                        out.push((i as u32, j));
                    }
                },
            );
            out
        })
        .collect();
    for (a, b) in chunks.into_iter().flatten() {
        edge(a, b);
    }
}

/// Exact adjacency `d <= R` through the angular band index.
pub fn build_graph(vertices: &VertexSet) -> Graph {
    let mut edges = Vec::new();
    for_each_edge(vertices, |a, b| edges.push((a, b)));
    Graph::from_edges(vertices.len(), edges)
}

/// Limit of the mean degree for `alpha > 1/2`: `2 alpha^2 nu / (pi (alpha - 1/2)^2)`.
pub fn limiting_mean_degree(alpha: f64, nu: f64) -> Option<f64> {
    (alpha > 0.5).then(|| 2.0 * alpha * alpha * nu / (PI * (alpha - 0.5) * (alpha - 0.5)))
}
