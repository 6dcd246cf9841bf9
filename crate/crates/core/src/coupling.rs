//! The map `Psi(r, theta) = (theta e^{R/2} / 2, R - r)` from the disk to the
//! strip `(-pi e^{R/2} / 2, pi e^{R/2} / 2] x [0, R]`, the intensity it
//! transports, and edge-agreement counts between `G_Po` and the torus graph
//! on the images.

use std::f64::consts::PI;
use std::io::{self, Write};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::continuum::torus_adjacent;
use crate::geometry::{polar_adjacent, threshold_angle, HalfPlanePoint, PolarPoint};
use crate::index::BandIndex;
use crate::kpkvb::VertexSet;

/// A point of the strip, the image of a disk point under `Psi`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StripPoint {
    pub x: f64,
    pub y: f64,
}

impl From<StripPoint> for HalfPlanePoint {
    fn from(s: StripPoint) -> Self {
        HalfPlanePoint { x: s.x, y: s.y }
    }
}

pub fn psi(p: &PolarPoint, radius: f64) -> StripPoint {
    StripPoint { x: p.theta * (radius / 2.0).exp() / 2.0, y: radius - p.r }
}

pub fn psi_inverse(s: &StripPoint, radius: f64) -> PolarPoint {
    PolarPoint { r: radius - s.y, theta: 2.0 * s.x * (-radius / 2.0).exp() }
}

/// Circumference `pi e^{R/2}` of the strip seen as a cylinder.
pub fn strip_circumference(radius: f64) -> f64 {
    PI * (radius / 2.0).exp()
}

/// The transported vertex density at height `y` against its limit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StripIntensity {
    /// `(nu alpha / pi) sinh(alpha (R - y)) / (cosh(alpha R) - 1)`.
    pub pushforward: f64,
    /// `(nu alpha / pi) e^{-alpha y}`.
    pub limit: f64,
    /// `pushforward / limit = (1 - e^{2 alpha (y - R)}) / (1 - e^{-alpha R})^2`.
    pub ratio: f64,
}

pub fn strip_intensity(alpha: f64, nu: f64, radius: f64, y: f64) -> StripIntensity {
    let limit = nu * alpha / PI * (-alpha * y).exp();
    let denom = -(-alpha * radius).exp_m1();
    let ratio = -(2.0 * alpha * (y - radius)).exp_m1() / (denom * denom);
    StripIntensity { pushforward: limit * ratio, limit, ratio }
}

/// `∫ |f_{Psi(V)} - f_limit|` over the strip, by Simpson's rule in `y`.
pub fn intensity_tv_proxy(alpha: f64, nu: f64, radius: f64) -> f64 {
    let n = 4000;
    let dy = radius / n as f64;
    let g = |y: f64| {
        let s = strip_intensity(alpha, nu, radius, y);
        (s.pushforward - s.limit).abs()
    };
    let sum: f64 = (0..=n)
        .map(|k| {
            let w = if k == 0 || k == n { 1.0 } else if k % 2 == 1 { 4.0 } else { 2.0 };
            w * g(k as f64 * dy)
        })
        .sum();
    strip_circumference(radius) * sum * dy / 3.0
}

/// Edge comparison between the disk graph and the torus graph on the
/// `Psi`-images of the same vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct EdgeAgreementReport {
    /// Pairs that are edges in at least one of the two graphs.
    pub total_pairs: u64,
    /// Edges present in both graphs.
    pub agreements: u64,
    /// Torus edges missing from the disk graph.
    pub gamma_only: u64,
    /// Disk-only edges with `r_i + r_j >= 3R/2`.
    pub g_only_outer: u64,
    /// Remaining disk-only edges.
    pub g_only_inner: u64,
}

impl EdgeAgreementReport {
    fn add(mut self, o: Self) -> Self {
        self.total_pairs += o.total_pairs;
        self.agreements += o.agreements;
        self.gamma_only += o.gamma_only;
        self.g_only_outer += o.g_only_outer;
        self.g_only_inner += o.g_only_inner;
        self
    }

    /// Classifies one pair given its adjacency in each graph.
    pub fn record(&mut self, in_g: bool, in_gamma: bool, outer: bool) {
        if !(in_g || in_gamma) {
            return;
        }
        self.total_pairs += 1;
        match (in_g, in_gamma) {
            (true, true) => self.agreements += 1,
            (false, true) => self.gamma_only += 1,
            _ if outer => self.g_only_outer += 1,
            _ => self.g_only_inner += 1,
        }
    }

    pub fn gamma_only_rate(&self) -> f64 {
        if self.total_pairs == 0 {
            0.0
        } else {
            self.gamma_only as f64 / self.total_pairs as f64
        }
    }
}

/// Counts agreements and disagreements over all pairs adjacent in at least
/// one graph. Candidates come from an angular index whose reach covers both
/// adjacency rules; all other pairs are non-edges in both.
pub fn edge_agreement(vertices: &VertexSet) -> EdgeAgreementReport {
    let radius = vertices.radius();
    let c = strip_circumference(radius);
    let pts = &vertices.points;
    let images: Vec<HalfPlanePoint> = pts.iter().map(|p| psi(p, radius).into()).collect();
    let index = BandIndex::new(images.iter().zip(pts).map(|(s, p)| (p.theta, s.y.max(0.0))), std::f64::consts::LN_2, Some(2.0 * PI));
    (0..pts.len())
        .into_par_iter()
        .with_min_len(256)
        .map(|i| {
            let (p, s) = (&pts[i], &images[i]);
            let mut rep = EdgeAgreementReport::default();
            index.query(
                p.theta,
                |_, y_max| {
                    let disk = threshold_angle(p.r, radius - y_max, radius);
                    let torus = 2.0 * ((s.y + y_max - radius) / 2.0).exp();
                    disk.max(torus)
                },
                |j| {
                    let j = j as usize;
                    if j > i {
                        let in_g = polar_adjacent(p, &pts[j], radius);
                        let in_gamma = torus_adjacent(s, &images[j], c);
                        rep.record(in_g, in_gamma, p.r + pts[j].r >= 1.5 * radius);
                    }
                },
            );
            rep
        })
        .reduce(EdgeAgreementReport::default, EdgeAgreementReport::add)
}

/// Expected number of disk-only edges among pairs with `r_i + r_j >= 3R/2`,
/// given the radii of `vertices` and averaging over their angles.
///
/// Angles are independent and uniform, so a pair at heights `y, y'` is a
/// disk-only edge with probability `(threshold - torus bound)^+ / pi`. The
/// double sum over pairs is evaluated on a histogram of heights with bins of
/// width `bin_width`; it has far smaller variance than the raw count, which
/// is mostly zero.
pub fn expected_outer_disagreements(vertices: &VertexSet, bin_width: f64) -> f64 {
    let radius = vertices.radius();
    let top = radius / 2.0;
    let bins = (top / bin_width).ceil().max(1.0) as usize;
    let mut hist = vec![0.0f64; bins];
    for p in &vertices.points {
        let y = radius - p.r;
        if y <= top {
            hist[((y / bin_width) as usize).min(bins - 1)] += 1.0;
        }
    }
    let centre = |k: usize| ((k as f64 + 0.5) * bin_width).min(top);
    let gap = |y1: f64, y2: f64| {
        if y1 + y2 > top {
            return 0.0;
        }
        let disk = threshold_angle(radius - y1, radius - y2, radius);
        let torus = (2.0 * ((y1 + y2 - radius) / 2.0).exp()).min(PI);
        (disk - torus).max(0.0) / PI
    };
    let mut total = 0.0;
    for a in 0..bins {
        if hist[a] == 0.0 {
            continue;
        }
        // pairs within one bin: n (n - 1) / 2
        total += 0.5 * hist[a] * (hist[a] - 1.0) * gap(centre(a), centre(a));
        for b in a + 1..bins {
            if hist[b] > 0.0 {
                total += hist[a] * hist[b] * gap(centre(a), centre(b));
            }
        }
    }
    total
}

/// CSV with header `x,y` of the `Psi`-images.
pub fn write_strip_csv(vertices: &VertexSet, mut out: impl Write) -> io::Result<()> {
    writeln!(out, "x,y")?;
    for p in &vertices.points {
        let s = psi(p, vertices.radius());
        writeln!(out, "{},{}", crate::fmt_sig(s.x), crate::fmt_sig(s.y))?;
    }
    Ok(())
}
