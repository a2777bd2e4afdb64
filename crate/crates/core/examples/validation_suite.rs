//! Runs the self-consistency checks and prints one line per check.

use fanosense::validation::validate;
use fanosense::ModelConfig;

fn main() -> fanosense::Result<()> {
    let report = validate(&ModelConfig::default())?;
    for c in &report.checks {
        println!("{} {:<36} {:.3e} (< {:.0e})", if c.pass { "ok  " } else { "FAIL" }, c.name, c.measured, c.tolerance);
    }
    println!("{}", if report.passed() { "all checks passed" } else { "some checks failed" });
    Ok(())
}
