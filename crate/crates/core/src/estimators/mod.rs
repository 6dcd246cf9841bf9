//! Composite Monte Carlo estimators: sandwich bounds for the percolation
//! function, the giant-component constant, the critical intensity at
//! `alpha = 1`, and the law-of-large-numbers experiment.

mod cvalue;
mod lambda_c;
mod lln;
mod theta;

pub use cvalue::{c_of, CEstimate, McConfig};
pub use lambda_c::{bracket_lambda_c, bracket_lambda_c_with, LambdaBracket, LambdaSearch};
pub use lln::{lln_experiment, LlnRow, LlnTable};
pub use theta::{calibrate_w, estimate_theta, ThetaEstimate};

/// Minimum replica count accepted by the estimators.
pub const MIN_REPLICAS: usize = 30;

/// Lower end of the proven subcritical range at `alpha = 1`: `e^{-gamma} / 4`.
pub const SUBCRITICAL_LAMBDA: f64 = 0.140_364_870_891_721_29;

/// `nu = pi lambda` conversion used throughout for `alpha = 1`.
pub fn nu_from_lambda(lambda: f64) -> f64 {
    std::f64::consts::PI * lambda
}

/// `lambda = nu alpha / pi`.
pub fn lambda_from_nu(alpha: f64, nu: f64) -> f64 {
    nu * alpha / std::f64::consts::PI
}
