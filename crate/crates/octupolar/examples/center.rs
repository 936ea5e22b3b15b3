//! The center of the cylinder: two poles and two circles of critical points.
//!
//! ```not_rust
//! cargo run --example center
//! ```

use octupolar::strata::center_spectrum;

fn main() {
    let c = center_spectrum();
    for p in &c.poles {
        println!(
            "pole theta1 = {:+.6}  lambda = {:+.6}  {}",
            p.location.theta1,
            p.lambda,
            p.morse_type.label()
        );
    }
    for k in &c.circles {
        println!(
            "circle z = {:+.9}  value = {:+.9}  multiplier = {:+.9}  hessian = {:?}",
            k.z(),
            k.value,
            k.multiplier,
            k.hessian_eigs
        );
    }
}
