//! The degenerate saddle on the line `χ = −π/2`, `K = g(ρ)`, and its cubic
//! Taylor coefficients.
//!
//! ```not_rust
//! cargo run --example monkey_saddle
//! ```

use octupolar::solver::monkey_saddle_check;
use octupolar::strata::{degenerate_saddle_coefficients, degenerate_saddle_latitude};
use octupolar::{curve_g, from_cylinder, SphericalPoint};
use std::f64::consts::FRAC_PI_2;

fn main() -> octupolar::Result<()> {
    let rho = 1.5;
    let t = from_cylinder(curve_g(rho)?, rho, -FRAC_PI_2)?;
    let lat = degenerate_saddle_latitude(rho);
    let e = monkey_saddle_check(&t, &SphericalPoint::new(lat, -FRAC_PI_2))?;
    println!("latitude {lat:.9}");
    println!(
        "expansion  1 {:+.9}  v^2 {:+.9}  u^3 {:+.9}  u v^2 {:+.9}",
        e.coeff(0, 0),
        e.coeff(0, 2),
        e.coeff(3, 0),
        e.coeff(1, 2)
    );
    println!(
        "residual terms u {:+.1e}  v {:+.1e}  u^2 {:+.1e}  u v {:+.1e}",
        e.coeff(1, 0),
        e.coeff(0, 1),
        e.coeff(2, 0),
        e.coeff(1, 1)
    );
    let (c0, q, cubic, mixed) = degenerate_saddle_coefficients(rho);
    println!("closed form  1 {c0:+.9}  v^2 {q:+.9}  u^3 {cubic:+.9}  u v^2 {mixed:+.9}");
    Ok(())
}
