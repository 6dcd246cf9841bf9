//! Quick invariant suites run by `hypergiant selftest`.

use std::collections::VecDeque;

use crate::continuum::{
    event_t, gamma_adjacent, gamma_graph, gamma_graph_torus, lemmas, sample_continuum, torus_adjacent, ContinuumParams,
    EventKind, LayeredSample, Window,
};
use crate::error::Result;
use crate::geometry::{appendix_bounds_check, disk_radius, polar_adjacent, KpkvbParams};
use crate::graph::{components, Graph};
use crate::kpkvb::{build_graph, sample_vertices};
use crate::rng::replica_seed;

pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &'static str, passed: bool, detail: String) -> Check {
    Check { name, passed, detail }
}

fn brute_force(n: usize, adjacent: impl Fn(usize, usize) -> bool) -> Vec<(u32, u32)> {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if adjacent(i, j) {
                edges.push((i as u32, j as u32));
            }
        }
    }
    edges
}

fn sorted_edges(g: &Graph) -> Vec<(u32, u32)> {
    let mut e = g.edges().to_vec();
    e.sort_unstable();
    e
}

fn disk_oracle(seed: u64) -> Result<Check> {
    let mut mismatches = 0;
    for k in 0..5 {
        let vs = sample_vertices(KpkvbParams::new(400, 0.8, 1.5)?, replica_seed(seed, k));
        let radius = vs.radius();
        let oracle = brute_force(vs.len(), |i, j| polar_adjacent(&vs.points[i], &vs.points[j], radius));
        mismatches += usize::from(sorted_edges(&build_graph(&vs)) != oracle);
    }
    Ok(check("disk adjacency matches brute force", mismatches == 0, format!("{mismatches}/5 instances differ")))
}

fn gamma_oracles(seed: u64) -> Result<Vec<Check>> {
    let params = ContinuumParams::new(0.9, 1.0)?;
    let (mut plain, mut torus) = (0, 0);
    for k in 0..5 {
        let c = 40.0;
        let s = sample_continuum(params, Window::new(c / 2.0, 6.0)?, replica_seed(seed, k));
        let p = &s.points;
        plain += usize::from(sorted_edges(&gamma_graph(&s)) != brute_force(p.len(), |i, j| gamma_adjacent(&p[i], &p[j])));
        let oracle = brute_force(p.len(), |i, j| torus_adjacent(&p[i], &p[j], c));
        torus += usize::from(sorted_edges(&gamma_graph_torus(&s, c)?) != oracle);
    }
    Ok(vec![
        check("continuum adjacency matches brute force", plain == 0, format!("{plain}/5 instances differ")),
        check("torus adjacency matches brute force", torus == 0, format!("{torus}/5 instances differ")),
    ])
}

fn bfs_sizes(g: &Graph) -> Vec<usize> {
    let adj = g.adjacency();
    let mut seen = vec![false; g.vertex_count()];
    let mut sizes = Vec::new();
    for s in 0..g.vertex_count() {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let (mut queue, mut size) = (VecDeque::from([s]), 0);
        while let Some(v) = queue.pop_front() {
            size += 1;
            for &w in &adj[v] {
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    queue.push_back(w as usize);
                }
            }
        }
        sizes.push(size);
    }
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    sizes
}

fn components_vs_bfs(seed: u64) -> Result<Check> {
    let g = build_graph(&sample_vertices(KpkvbParams::new(2000, 0.9, 1.0)?, seed));
    let ok = components(&g).sizes == bfs_sizes(&g);
    Ok(check("component sizes match breadth-first search", ok, format!("{} vertices", g.vertex_count())))
}

fn geometric_sweeps(seed: u64) -> Vec<Check> {
    let sweeps = [
        ("cross property (i)", lemmas::sweep_cross_i(10_000, seed)),
        ("cross property (ii)", lemmas::sweep_cross_ii(2_000, seed)),
        ("box adjacency", lemmas::sweep_boxes(100_000, seed)),
    ];
    sweeps
        .into_iter()
        .map(|(name, s)| check(name, s.passed(), format!("{} violations in {}", s.violations, s.configurations)))
        .collect()
}

fn appendix_sweep() -> Result<Check> {
    let mut violations = 0;
    for k in 0..=10_000 {
        let x = k as f64 / 10_000.0;
        violations += appendix_bounds_check(x)?.iter().filter(|&&ok| !ok).count();
    }
    Ok(check("appendix inequalities on [0, 1]", violations == 0, format!("{violations} violations")))
}

fn layered_monotone(seed: u64) -> Result<Check> {
    let (y, h, w) = (0.5, 4.0, 2.0);
    let window = EventKind::T { y, h, w }.window()?;
    let lambdas = [0.25, 0.5, 1.0, 2.0];
    let mut violations = 0;
    for k in 0..50 {
        let base = LayeredSample::sample(0.8, 2.0, window, replica_seed(seed, k))?;
        let mut prev = false;
        for &l in &lambdas {
            let now = event_t(y, h, w, &base.slice(ContinuumParams::new(0.8, l)?)?)?;
            violations += usize::from(prev && !now);
            prev = now;
        }
    }
    Ok(check("event T monotone in intensity under layering", violations == 0, format!("{violations} violations")))
}

fn determinism(seed: u64) -> Result<Check> {
    let params = KpkvbParams::new(1000, 0.7, 2.0)?;
    let a = build_graph(&sample_vertices(params, seed));
    let b = build_graph(&sample_vertices(params, seed));
    Ok(check("seeded sampling is reproducible", a == b, format!("{} edges", a.edge_count())))
}

fn radius_example() -> Result<Check> {
    let r = disk_radius(500.0, 2.0)?;
    Ok(check("disk radius example", (r - 11.042_921_835_724_493).abs() < 1e-12, format!("R = {r}")))
}

pub fn run_all(seed: u64) -> Result<Vec<Check>> {
    let mut out = vec![radius_example()?, disk_oracle(seed)?];
    out.extend(gamma_oracles(seed)?);
    out.push(components_vs_bfs(seed)?);
    out.extend(geometric_sweeps(seed));
    out.push(appendix_sweep()?);
    out.push(layered_monotone(seed)?);
    out.push(determinism(seed)?);
    Ok(out)
}
