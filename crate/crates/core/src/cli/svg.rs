use std::fmt::Write as _;

use serde_json::Value;

use crate::graph::Graph;
use crate::kpkvb::VertexSet;

const SIZE: f64 = 1000.0;
const MARGIN: f64 = 20.0;

/// Poincaré-style disk layout: a vertex at `(r, theta)` is drawn at radius
/// `r / R` of the disk, edges are straight chords.
pub fn render(vertices: &VertexSet, graph: &Graph, config: &Value) -> String {
    let centre = SIZE / 2.0;
    let scale = centre - MARGIN;
    let radius = vertices.radius();
    let xy: Vec<(f64, f64)> = vertices
        .points
        .iter()
        .map(|p| {
            let s = scale * p.r / radius;
            (centre + s * p.theta.cos(), centre - s * p.theta.sin())
        })
        .collect();
    // "--" may not appear inside an XML comment
    let comment = config.to_string().replace("--", "- -");
    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(out, "<!-- config: {comment} -->");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {SIZE} {SIZE}\" width=\"{SIZE}\" height=\"{SIZE}\">"
    );
    let _ = writeln!(
        out,
        "<circle class=\"disk\" cx=\"{centre}\" cy=\"{centre}\" r=\"{scale}\" fill=\"none\" stroke=\"#999\" stroke-width=\"1\"/>"
    );
    out.push_str("<g stroke=\"#4a6fa5\" stroke-width=\"0.4\" stroke-opacity=\"0.5\">\n");
    for &(a, b) in graph.edges() {
        let ((x1, y1), (x2, y2)) = (xy[a as usize], xy[b as usize]);
        let _ = writeln!(out, "<line class=\"e\" x1=\"{x1:.2}\" y1=\"{y1:.2}\" x2=\"{x2:.2}\" y2=\"{y2:.2}\"/>");
    }
    out.push_str("</g>\n<g fill=\"#c0392b\">\n");
    for (x, y) in xy {
        let _ = writeln!(out, "<circle class=\"v\" cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"2\"/>");
    }
    out.push_str("</g>\n</svg>\n");
    out
}
