//! Invariance groups across the strata, and a check of the group table.
//!
//! ```not_rust
//! cargo run --example symmetry
//! ```

use octupolar::strata::K_TETRA;
use octupolar::symmetry::{detect_symmetry, verify_table};
use octupolar::OrientedParams;
use std::f64::consts::{FRAC_PI_2, FRAC_PI_6};

fn main() -> octupolar::Result<()> {
    let check = verify_table();
    println!("table: {}/{} entries match", check.matching, check.total);
    let cases = [
        ("tetrahedral", OrientedParams::new(K_TETRA, 0.0, 0.0)),
        ("center", OrientedParams::new(0.0, 0.0, 0.0)),
        ("axis", OrientedParams::new(0.3, 0.0, 0.0)),
        ("disk", OrientedParams::new(0.0, 0.7, -1.0)),
        ("plane P0", OrientedParams::new(0.3, 0.7, FRAC_PI_2)),
        ("plane P-", OrientedParams::new(0.3, 0.7, -FRAC_PI_6)),
        ("bulk", OrientedParams::new(0.3, 0.7, -1.0)),
    ];
    for (name, p) in cases {
        let s = detect_symmetry(&p)?;
        println!(
            "{name:<12} {:<4} {} T_d elements, {} planes",
            s.group_name,
            s.elements.len(),
            s.reflection_planes.len()
        );
    }
    Ok(())
}
