//! Lower and upper Monte Carlo bounds on the percolation probability of a
//! planted point, as a function of its height.

use hypergiant::continuum::ContinuumParams;
use hypergiant::estimators::estimate_theta;

fn main() -> hypergiant::Result<()> {
    let params = ContinuumParams::new(0.8, 0.6)?;
    println!("   y   lower   upper");
    for y in [0.0, 0.5, 1.0, 2.0, 3.0, 4.0] {
        let est = estimate_theta(y, params, 10.0, 2.0, 10.0, 400, 11)?;
        println!("{y:4.1}  {:.3}   {:.3}", est.lower, est.upper);
    }
    Ok(())
}
