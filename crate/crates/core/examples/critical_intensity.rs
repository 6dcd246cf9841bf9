//! Brackets the critical intensity at alpha = 1 by bisection on the
//! left-right crossing probability, for two window heights.

use hypergiant::estimators::{bracket_lambda_c, SUBCRITICAL_LAMBDA};

fn main() -> hypergiant::Result<()> {
    println!("subcritical below lambda = {SUBCRITICAL_LAMBDA:.6}");
    for h in [3.0, 4.0, 5.0] {
        let b = bracket_lambda_c(h, 2.0, 200, 0.05, 1)?;
        println!(
            "h = {h}: lambda_c in [{:.3}, {:.3}], nu_c ~ {:.3}, monotonicity violations {}",
            b.lo, b.hi, b.nu_c, b.monotone_violations
        );
        if let Some(w) = b.warning {
            println!("  warning: {w}");
        }
    }
    Ok(())
}
