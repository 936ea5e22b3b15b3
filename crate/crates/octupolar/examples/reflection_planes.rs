//! Critical points on the reflection plane `χ = π/2` crossing the fold.
//!
//! ```not_rust
//! cargo run --example reflection_planes
//! ```

use octupolar::curve_f;
use octupolar::strata::reflection_plane_spectrum;

fn main() -> octupolar::Result<()> {
    let rho = 0.5;
    let kf = curve_f(rho)?;
    println!("fold at K = {kf:.9} for rho = {rho}");
    for k in [0.5 * kf, 0.9 * kf, 1.1 * kf, 2.0 * kf] {
        let pts = reflection_plane_spectrum(k, rho, true)?;
        println!("K = {k:.6}: {} points in the plane family", pts.len());
    }
    Ok(())
}
