//! Critical points on the disk `K = 0` for a few radii.
//!
//! ```not_rust
//! cargo run --example disk
//! ```

use octupolar::strata::{d2h_r, d2h_spectrum, type_counts};
use std::f64::consts::FRAC_PI_2;

fn main() -> octupolar::Result<()> {
    for rho in [0.25, 0.5, 1.0, 1.5, 2.0] {
        let pts = d2h_spectrum(rho, FRAC_PI_2)?;
        let (m, n, s) = type_counts(&pts);
        let (rp, rm) = d2h_r(rho);
        println!("rho = {rho:<4}  points {:>2}  max {m}  min {n}  saddles {s}  r+ = {rp:.6}  r- = {rm:?}", pts.len());
    }
    Ok(())
}
