//! Contour data of the potential at the tetrahedral point, written to
//! standard output as CSV.
//!
//! ```not_rust
//! cargo run --example plotdata > contour.csv
//! ```

use octupolar::commands::{plotdata_csv, AngleUnits, PlotKind};
use octupolar::config::Config;
use octupolar::from_cylinder;
use octupolar::strata::K_TETRA;

fn main() -> octupolar::Result<()> {
    let t = from_cylinder(K_TETRA, 0.0, 0.0)?;
    print!(
        "{}",
        plotdata_csv(
            &t,
            PlotKind::Contour,
            36,
            &Config::default(),
            AngleUnits::default()
        )?
    );
    Ok(())
}
