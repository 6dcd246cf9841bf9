//! Estimates the giant-component constant c(alpha, nu) from the continuum
//! model and compares it with |C1|/N in sampled graphs.

use hypergiant::estimators::{c_of, McConfig};
use hypergiant::geometry::KpkvbParams;
use hypergiant::kpkvb::{build_graph, sample_vertices};
use hypergiant::rng::replica_seed;
use hypergiant::components;

fn main() -> hypergiant::Result<()> {
    let (alpha, nu) = (0.8, 2.0);
    let est = c_of(alpha, nu, 12, &McConfig::default(), 1)?;
    println!(
        "c({alpha}, {nu}) = {:.3} +- {:.3}  (sandwich {:.3} .. {:.3})",
        est.value, est.uncertainty, est.lower_value, est.upper_value
    );
    for n in [2_000, 20_000, 100_000] {
        let params = KpkvbParams::new(n, alpha, nu)?;
        let fracs: Vec<f64> =
            (0..5).map(|k| components(&build_graph(&sample_vertices(params, replica_seed(2, k)))).c1_frac).collect();
        println!("N = {n:>6}: mean c1_frac {:.3}", fracs.iter().sum::<f64>() / fracs.len() as f64);
    }
    Ok(())
}
