use std::io::{self, Write};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::geometry::KpkvbParams;
use crate::graph::components;
use crate::kpkvb::{build_graph, sample_vertices, sample_vertices_poissonized};
use crate::rng::{derive, replica_seed};
use crate::stats::mean_sd;

/// Component fractions at one `N`, each as (mean, standard deviation) over
/// replicas, normalised by `N` for both models.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LlnRow {
    pub n: usize,
    pub replicas: usize,
    pub g_c1: (f64, f64),
    pub g_c2: (f64, f64),
    pub po_c1: (f64, f64),
    pub po_c2: (f64, f64),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LlnTable {
    pub alpha: f64,
    pub nu: f64,
    pub seed: u64,
    pub rows: Vec<LlnRow>,
}

impl LlnTable {
    pub const CSV_HEADER: &'static str =
        "n,replicas,g_c1_mean,g_c1_sd,g_c2_mean,g_c2_sd,po_c1_mean,po_c1_sd,po_c2_mean,po_c2_sd";

    pub fn write_csv(&self, mut out: impl Write) -> io::Result<()> {
        writeln!(out, "{}", Self::CSV_HEADER)?;
        for r in &self.rows {
            let cells = [r.g_c1.0, r.g_c1.1, r.g_c2.0, r.g_c2.1, r.po_c1.0, r.po_c1.1, r.po_c2.0, r.po_c2.1];
            let cells: Vec<String> = cells.iter().map(|&v| crate::fmt_sig(v)).collect();
            writeln!(out, "{},{},{}", r.n, r.replicas, cells.join(","))?;
        }
        Ok(())
    }
}

/// For every `N` in `n_list`, samples `replicas` coupled pairs `(G, G_Po)`
/// and records `|C_1| / N` and `|C_2| / N`.
pub fn lln_experiment(alpha: f64, nu: f64, n_list: &[usize], replicas: usize, seed: u64) -> Result<LlnTable> {
    if n_list.is_empty() || n_list.windows(2).any(|w| w[0] >= w[1]) {
        return domain("N list must be non-empty and strictly increasing");
    }
    if replicas == 0 {
        return domain("at least one replica is needed");
    }
    let mut rows = Vec::with_capacity(n_list.len());
    for &n in n_list {
        let params = KpkvbParams::new(n, alpha, nu)?;
        let stream = derive(seed, &[n as u64]);
        let fracs: Vec<[f64; 4]> = (0..replicas)
            .into_par_iter()
            .map(|k| {
                let s = replica_seed(stream, k);
                let g = components(&build_graph(&sample_vertices(params, s)));
                let po = components(&build_graph(&sample_vertices_poissonized(params, s)));
                let nf = n as f64;
                [g.largest() as f64 / nf, g.second() as f64 / nf, po.largest() as f64 / nf, po.second() as f64 / nf]
            })
            .collect();
        let col = |i: usize| mean_sd(&fracs.iter().map(|f| f[i]).collect::<Vec<_>>());
        rows.push(LlnRow { n, replicas, g_c1: col(0), g_c2: col(1), po_c1: col(2), po_c2: col(3) });
    }
    Ok(LlnTable { alpha, nu, seed, rows })
}
