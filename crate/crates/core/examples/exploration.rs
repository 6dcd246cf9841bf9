//! The rightmost exploration from the origin at alpha = 1 and small
//! intensity, against its Gumbel bound.

use std::f64::consts::PI;

use hypergiant::continuum::{
    explore_rightmost, increment_mean_bound, sample_continuum, ContinuumParams, Window,
};
use hypergiant::rng::replica_seed;

fn main() -> hypergiant::Result<()> {
    let lambda = 0.1;
    let params = ContinuumParams::new(1.0, lambda)?;
    let window = Window::new(200.0 * PI, 12.0)?;
    let (mut lengths, mut rises) = (Vec::new(), Vec::new());
    for k in 0..2000 {
        let path = explore_rightmost(0.0, &sample_continuum(params, window, replica_seed(6, k)));
        lengths.push(path.len() - 1);
        rises.extend(path.windows(2).map(|w| w[1].1 - w[0].1));
    }
    let mean_len = lengths.iter().sum::<usize>() as f64 / lengths.len() as f64;
    let longest = lengths.iter().max().copied().unwrap_or(0);
    println!("steps per exploration: mean {mean_len:.3}, max {longest}");
    if !rises.is_empty() {
        let mean_rise = rises.iter().sum::<f64>() / rises.len() as f64;
        println!("mean rise over taken steps {mean_rise:.3}");
    }
    println!("Gumbel mean bound 2 ln(4 lambda) + 2 gamma = {:.3}", increment_mean_bound(lambda));
    Ok(())
}
