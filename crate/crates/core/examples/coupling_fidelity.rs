//! Compares the disk graph with the torus graph on the mapped vertices.

use hypergiant::coupling::{edge_agreement, expected_outer_disagreements, intensity_tv_proxy};
use hypergiant::geometry::KpkvbParams;
use hypergiant::kpkvb::sample_vertices_poissonized;

fn main() -> hypergiant::Result<()> {
    println!("       N   edges  gamma_only  outer  inner  E[outer]  intensity_tv");
    for n in [1_000, 10_000, 100_000] {
        let params = KpkvbParams::new(n, 0.8, 1.0)?;
        let vs = sample_vertices_poissonized(params, 9);
        let r = edge_agreement(&vs);
        println!(
            "{n:>8} {:>7} {:>11} {:>6} {:>6} {:>9.4} {:>13.5}",
            r.total_pairs,
            r.gamma_only,
            r.g_only_outer,
            r.g_only_inner,
            expected_outer_disagreements(&vs, 0.01),
            intensity_tv_proxy(0.8, 1.0, params.radius())
        );
    }
    Ok(())
}
