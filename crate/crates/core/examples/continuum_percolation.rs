//! The half-plane continuum model: sample a window, build the graph, and
//! estimate the probabilities of the three finite-window events.

use hypergiant::continuum::{
    estimate_event, gamma_graph, sample_continuum, ContinuumParams, EventKind, Window,
};
use hypergiant::components;

fn main() -> hypergiant::Result<()> {
    let params = ContinuumParams::new(0.8, 1.0)?;
    let sample = sample_continuum(params, Window::new(200.0, 8.0)?, 5);
    let graph = gamma_graph(&sample);
    let summary = components(&graph);
    println!(
        "{} points, {} edges, largest component {} points",
        sample.len(),
        graph.edge_count(),
        summary.largest()
    );

    for kind in [
        EventKind::T { y: 0.0, h: 6.0, w: 2.0 },
        EventKind::U { y: 0.0, n: 5.0, h: 6.0 },
        EventKind::C { w: 2.0, h: 6.0 },
    ] {
        let est = estimate_event(kind, params, 300, 7)?;
        println!("{:>2}: p = {:.3}  [{:.3}, {:.3}]", kind.name(), est.p_hat, est.ci[0], est.ci[1]);
    }
    Ok(())
}
