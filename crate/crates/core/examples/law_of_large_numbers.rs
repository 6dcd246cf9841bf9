//! Largest and second-largest component fractions of G and its
//! Poissonized version for growing N, written as CSV to stdout.

use hypergiant::estimators::lln_experiment;

fn main() -> hypergiant::Result<()> {
    let table = lln_experiment(0.8, 2.0, &[1_000, 5_000, 25_000], 10, 4)?;
    table.write_csv(std::io::stdout().lock())?;
    Ok(())
}
