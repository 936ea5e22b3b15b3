//! Reduces a rotated and rescaled tensor back to its cylinder coordinates.
//!
//! ```not_rust
//! cargo run --example orient
//! ```

use octupolar::tensor::Mat3;
use octupolar::{canonical_form, from_cylinder, orient, OrientedParams};

fn main() -> octupolar::Result<()> {
    let p = OrientedParams::new(0.4, 0.5, std::f64::consts::FRAC_PI_3);
    let q = Mat3::new(0.36, 0.48, -0.8, -0.8, 0.6, 0.0, 0.48, 0.64, 0.6);
    let t = from_cylinder(p.k, p.rho, p.chi)?.rotated(&q).scaled(2.7);
    let o = orient(&t)?;
    let c = canonical_form(p);
    println!(
        "input      K = {:.9}  rho = {:.9}  chi = {:+.9}",
        p.k, p.rho, p.chi
    );
    println!(
        "canonical  K = {:.9}  rho = {:.9}  chi = {:+.9}",
        c.k, c.rho, c.chi
    );
    println!(
        "recovered  K = {:.9}  rho = {:.9}  chi = {:+.9}  scale = {:.9}",
        o.params.k, o.params.rho, o.params.chi, o.scale
    );
    Ok(())
}
