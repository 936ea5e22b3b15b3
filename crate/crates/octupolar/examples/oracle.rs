//! The Newton solver against the brute-force grid search at a bulk point.
//!
//! ```not_rust
//! cargo run --release --example oracle
//! ```

use octupolar::oracle::oracle_spectrum;
use octupolar::{solve_spectrum, OrientedParams, SolverConfig};

fn main() -> octupolar::Result<()> {
    let p = OrientedParams::new(0.3, 0.7, -1.0);
    let fast = solve_spectrum(&p, &SolverConfig::default())?;
    let slow = oracle_spectrum(&p, 256, 512)?;
    println!(
        "newton: {} points, grid: {} points",
        fast.count(),
        slow.count()
    );
    let worst = fast
        .points
        .iter()
        .map(|a| {
            slow.points
                .iter()
                .map(|b| a.location.distance(&b.location))
                .fold(f64::INFINITY, f64::min)
        })
        .fold(0.0, f64::max);
    println!("largest location difference: {worst:.3e}");
    Ok(())
}
