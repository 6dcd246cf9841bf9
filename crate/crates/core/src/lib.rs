//! Hyperbolic random graphs (the KPKVB model), the half-plane continuum
//! percolation model that describes their local structure, and Monte Carlo
//! estimators for the giant-component fraction.

pub mod cli;
pub mod continuum;
pub mod coupling;
pub mod dsu;
pub mod error;
pub mod estimators;
pub mod geometry;
pub mod graph;
pub mod index;
pub mod kpkvb;
pub mod powerlaw;
pub mod rng;
pub mod stats;

pub use error::{Error, Result};
pub use geometry::{HalfPlanePoint, KpkvbParams, PolarPoint};
pub use graph::{components, ComponentSummary, Graph};

/// Formats `x` rounded to 9 significant digits, in the shortest form that
/// reads back as the rounded value.
pub fn fmt_sig(x: f64) -> String {
    if !x.is_finite() {
        return format!("{x}");
    }
    let rounded: f64 = format!("{x:.8e}").parse().expect("formatted float parses");
    if rounded == 0.0 {
        return "0".to_string();
    }
    format!("{rounded}")
}
