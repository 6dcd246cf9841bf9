//! Samples a hyperbolic random graph and prints its basic statistics.
//!
//!     cargo run --release --example disk_graph -- 20000 0.8 1.5

use hypergiant::geometry::KpkvbParams;
use hypergiant::kpkvb::{build_graph, limiting_mean_degree, sample_vertices};
use hypergiant::components;

fn main() -> hypergiant::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let n = args.first().map_or(20_000, |s| s.parse().expect("N"));
    let alpha = args.get(1).map_or(0.8, |s| s.parse().expect("alpha"));
    let nu = args.get(2).map_or(1.5, |s| s.parse().expect("nu"));

    let params = KpkvbParams::new(n, alpha, nu)?;
    let vertices = sample_vertices(params, 1);
    let graph = build_graph(&vertices);
    let summary = components(&graph);

    println!("N = {n}, alpha = {alpha}, nu = {nu}, R = {:.4}", params.radius());
    println!("edges: {}", graph.edge_count());
    match limiting_mean_degree(alpha, nu) {
        Some(limit) => println!("mean degree: {:.4} (limit {limit:.4})", graph.mean_degree()),
        None => println!("mean degree: {:.4} (diverges as N grows)", graph.mean_degree()),
    }
    println!("largest components: {} and {}", summary.largest(), summary.second());
    println!("c1_frac = {:.4}, c2_frac = {:.4}", summary.c1_frac, summary.c2_frac);
    Ok(())
}
