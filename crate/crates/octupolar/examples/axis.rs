//! Closed-form spectrum on the axis of the cylinder, compared with the
//! numerical solver.
//!
//! ```not_rust
//! cargo run --example axis -- 1.5
//! ```

use octupolar::critical::sort_points;
use octupolar::strata::{d3h_spectrum, d3h_zeta};
use octupolar::{solve_spectrum, OrientedParams, SolverConfig};

fn main() -> octupolar::Result<()> {
    let k: f64 = std::env::args()
        .nth(1)
        .and_then(|a| a.parse().ok())
        .unwrap_or(0.5);
    let (zp, zm) = d3h_zeta(k);
    println!("K = {k}: secondary values {zp:.9} and {zm:.9}");
    let mut exact = d3h_spectrum(k)?;
    sort_points(&mut exact);
    let numeric = solve_spectrum(&OrientedParams::new(k, 0.0, 0.0), &SolverConfig::default())?;
    println!(
        "{:>14} {:>14} {:>14}   numeric lambda",
        "theta1", "theta2", "lambda"
    );
    for (a, b) in exact.iter().zip(&numeric.points) {
        println!(
            "{:>+14.9} {:>+14.9} {:>+14.9}   {:>+14.9}",
            a.location.theta1, a.location.theta2, a.lambda, b.lambda
        );
    }
    println!(
        "absolute maximum at the pole: {}",
        numeric.absolute_max_at_pole
    );
    Ok(())
}
