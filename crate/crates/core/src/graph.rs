//! Simple undirected graphs, connected components and edge-list export.

use std::io::{self, Write};

use serde::{Deserialize, Serialize};

use crate::dsu::DisjointSets;

/// A simple undirected graph on vertices `0..vertex_count`.
///
/// Edges are stored once each as `(i, j)` with `i < j`, sorted.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Graph {
    vertex_count: usize,
    edges: Vec<(u32, u32)>,
}

impl Graph {
    /// Normalises, sorts and deduplicates; self-loops are dropped.
    pub fn from_edges(vertex_count: usize, edges: impl IntoIterator<Item = (u32, u32)>) -> Self {
        let mut edges: Vec<(u32, u32)> =
            edges.into_iter().filter(|(a, b)| a != b).map(|(a, b)| if a < b { (a, b) } else { (b, a) }).collect();
        edges.sort_unstable();
        edges.dedup();
        debug_assert!(edges.last().is_none_or(|&(_, b)| (b as usize) < vertex_count));
        Graph { vertex_count, edges }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0usize; self.vertex_count];
        for &(a, b) in &self.edges {
            deg[a as usize] += 1;
            deg[b as usize] += 1;
        }
        deg
    }

    /// Neighbour lists in increasing order.
    pub fn adjacency(&self) -> Vec<Vec<u32>> {
        let mut adj = vec![Vec::new(); self.vertex_count];
        for &(a, b) in &self.edges {
            adj[a as usize].push(b);
            adj[b as usize].push(a);
        }
        for l in &mut adj {
            l.sort_unstable();
        }
        adj
    }

    pub fn mean_degree(&self) -> f64 {
        if self.vertex_count == 0 {
            return 0.0;
        }
        2.0 * self.edges.len() as f64 / self.vertex_count as f64
    }

    /// Writes `"u v"` per line with 0-based labels.
    pub fn write_edge_list(&self, mut out: impl Write) -> io::Result<()> {
        for &(a, b) in &self.edges {
            writeln!(out, "{a} {b}")?;
        }
        Ok(())
    }
}

/// Component sizes in descending order; equal sizes are ordered by their
/// smallest vertex label.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComponentSummary {
    pub sizes: Vec<usize>,
    pub c1_frac: f64,
    pub c2_frac: f64,
}

impl ComponentSummary {
    pub fn from_sets(sets: &mut DisjointSets) -> Self {
        let n = sets.len();
        // (size, min label) per root; labels are visited in increasing order
        // so the first one seen for a root is its minimum.
        let mut first: Vec<Option<u32>> = vec![None; n];
        let mut comps = Vec::new();
        for v in 0..n {
            let root = sets.find(v);
            if first[root].is_none() {
                first[root] = Some(v as u32);
                comps.push((sets.set_size(root), v));
            }
        }
        comps.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        let sizes: Vec<usize> = comps.into_iter().map(|c| c.0).collect();
        Self::from_sizes(sizes, n)
    }

    fn from_sizes(sizes: Vec<usize>, n: usize) -> Self {
        let frac = |k: usize| if n == 0 { 0.0 } else { sizes.get(k).copied().unwrap_or(0) as f64 / n as f64 };
        ComponentSummary { c1_frac: frac(0), c2_frac: frac(1), sizes }
    }

    pub fn vertex_count(&self) -> usize {
        self.sizes.iter().sum()
    }

    pub fn largest(&self) -> usize {
        self.sizes.first().copied().unwrap_or(0)
    }

    pub fn second(&self) -> usize {
        self.sizes.get(1).copied().unwrap_or(0)
    }
}

pub fn components(graph: &Graph) -> ComponentSummary {
    let mut sets = DisjointSets::new(graph.vertex_count());
    for &(a, b) in graph.edges() {
        sets.union(a as usize, b as usize);
    }
    ComponentSummary::from_sets(&mut sets)
}
