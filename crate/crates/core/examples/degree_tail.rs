//! Fits the power-law exponent of the degree tail, which should be close
//! to 2 alpha + 1.

use hypergiant::geometry::KpkvbParams;
use hypergiant::kpkvb::{build_graph, sample_vertices};
use hypergiant::powerlaw::{degree_tail_exponent, DEFAULT_XMIN};

fn main() -> hypergiant::Result<()> {
    for alpha in [0.75, 1.0, 1.25] {
        let graph = build_graph(&sample_vertices(KpkvbParams::new(200_000, alpha, 2.0)?, 3));
        let fitted = degree_tail_exponent(&graph, DEFAULT_XMIN)?;
        println!("alpha {alpha:.2}: fitted {fitted:.3}, expected {:.2}", 2.0 * alpha + 1.0);
    }
    Ok(())
}
