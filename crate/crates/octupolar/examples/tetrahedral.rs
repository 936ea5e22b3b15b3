//! The fourteen critical points at the tetrahedral points of the axis.
//!
//! ```not_rust
//! cargo run --example tetrahedral
//! ```

use octupolar::output::render_report;
use octupolar::strata::K_TETRA;
use octupolar::{solve_spectrum, OrientedParams, SolverConfig};

fn main() -> octupolar::Result<()> {
    let report = solve_spectrum(
        &OrientedParams::new(K_TETRA, 0.0, 0.0),
        &SolverConfig::default(),
    )?;
    print!("{}", render_report(&report, false));
    println!(
        "arcsin(1/3) = {:.12}, arcsin(1/sqrt 3) = {:.12}",
        (1.0f64 / 3.0).asin(),
        (1.0 / 3.0f64.sqrt()).asin()
    );
    Ok(())
}
