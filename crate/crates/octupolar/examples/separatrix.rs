//! One section of the separatrix at `χ = −π/2`, compared with the curve `g`.
//!
//! ```not_rust
//! cargo run --release --example separatrix
//! ```

use octupolar::curve_g;
use octupolar::separatrix::{interior_grid, trace_section, SeparatrixConfig};
use std::f64::consts::FRAC_PI_2;

fn main() -> octupolar::Result<()> {
    let cfg = SeparatrixConfig::default();
    let section = trace_section(-FRAC_PI_2, &interior_grid(0.0, 2.0, 9), &cfg)?;
    for s in &section.samples {
        println!(
            "rho = {:.3}  K = {:.9}  g = {:.9}  {}",
            s.rho,
            s.k_crit,
            curve_g(s.rho)?,
            s.branch.label()
        );
    }
    println!("cusp: {:?}", section.cusp);
    Ok(())
}
