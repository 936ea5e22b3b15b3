use octupolar::strata::K_TETRA;
use octupolar::symmetry::*;
use octupolar::tensor::{Mat3, Vec3};
use octupolar::*;
use proptest::prelude::*;
use std::f64::consts::{FRAC_PI_2, FRAC_PI_6, PI};

fn table() -> Table {
    multiplication_table()
}

#[test]
fn matrices_are_orthogonal_with_stated_determinants() {
    let els = td_elements();
    assert_eq!(els.len(), 24);
    for e in &els {
        let m = e.matrix;
        assert!(
            (m.transpose() * m - Mat3::identity()).abs().max() < 1e-14,
            "M{}",
            e.id
        );
        assert!((m.determinant() - f64::from(e.det)).abs() < 1e-12);
        assert_eq!(e.det, if e.id <= 12 { 1 } else { -1 });
    }
    assert_eq!(els[0].matrix, Mat3::identity());
    let m1m = els[12].matrix;
    for k in 0..12 {
        assert!((els[k + 12].matrix - m1m * els[k].matrix).abs().max() < 1e-15);
    }
}

#[test]
fn m12_swaps_tetrahedron_vertices() {
    let m12 = td_elements()[11].matrix;
    let img = m12 * Vec3::z();
    let s2 = 2.0f64.sqrt();
    assert!((img - Vec3::new(0.0, 2.0 * s2 / 3.0, -1.0 / 3.0)).norm() < 1e-15);
}

#[test]
fn every_element_permutes_the_vertices() {
    let v = tetrahedron_vertices();
    for e in td_elements() {
        let mut hit = [false; 4];
        for p in &v {
            let img = e.matrix * p;
            let j = v
                .iter()
                .position(|q| (q - img).norm() < 1e-12)
                .expect("vertex image");
            hit[j] = true;
        }
        assert!(hit.iter().all(|h| *h), "M{}", e.id);
    }
}

#[test]
fn table_matches_transcription() {
    let check = verify_table();
    assert_eq!(check.matching, 576);
    assert!(check.mismatches.is_empty());
    let t = table();
    assert_eq!(t[1][3], 11);
    for (i, row) in t.iter().enumerate() {
        assert_eq!(row[0], i + 1);
        assert_eq!(t[0][i], i + 1);
    }
}

#[test]
fn table_products_match_matrix_products() {
    let els = td_elements();
    let t = table();
    for a in &els {
        for b in &els {
            let prod = a.matrix * b.matrix;
            let c = &els[t[a.id - 1][b.id - 1] - 1];
            assert!((prod - c.matrix).abs().max() < 1e-12);
        }
    }
}

#[test]
fn group_axioms_hold() {
    let t = table();
    for a in 0..24 {
        for b in 0..24 {
            for c in 0..24 {
                assert_eq!(t[t[a][b] - 1][c], t[a][t[b][c] - 1]);
            }
        }
        assert_eq!((0..24).filter(|&b| t[a][b] == 1).count(), 1);
        let mut row: Vec<usize> = t[a].to_vec();
        row.sort_unstable();
        assert_eq!(row, (1..=24).collect::<Vec<_>>());
    }
}

#[test]
fn rotation_subgroups_are_closed_and_g8_is_normal() {
    let t = table();
    let lattice = subgroup_lattice();
    for g in lattice
        .iter()
        .filter(|g| g.name.len() == 2 && g.name.starts_with('G'))
    {
        assert!(is_closed(&g.elements, &t), "{}", g.name);
    }
    let g8 = lattice.iter().find(|g| g.name == "G8").unwrap();
    assert!(is_normal(&g8.elements, &t));
    assert!(acts_freely(&g8.elements));
    for g in lattice
        .iter()
        .filter(|g| g.name.len() == 2 && g.name != "G8")
    {
        assert!(!is_normal(&g.elements, &t), "{}", g.name);
        assert!(!acts_freely(&g.elements), "{}", g.name);
    }
}

#[test]
fn fixed_axes_are_fixed() {
    let els = td_elements();
    for g in subgroup_lattice().iter().filter(|g| g.fixed_axis.is_some()) {
        let a = Vec3::from(g.fixed_axis.unwrap());
        for &id in &g.elements {
            assert!(
                (els[id - 1].matrix * a - a).norm() < 1e-12,
                "{} M{id}",
                g.name
            );
        }
    }
}

#[test]
fn first_three_reflections_preserve_the_north_pole() {
    let els = td_elements();
    let lattice = subgroup_lattice();
    let gd: Vec<&Subgroup> = lattice
        .iter()
        .filter(|g| g.name.starts_with("Gd"))
        .collect();
    assert_eq!(gd.len(), 6);
    for (n, g) in gd.iter().enumerate() {
        let m = els[g.elements[1] - 1].matrix;
        let fixed = (m * Vec3::z() - Vec3::z()).norm() < 1e-12;
        assert_eq!(fixed, n < 3, "{}", g.name);
        assert!((m * m - Mat3::identity()).abs().max() < 1e-14);
    }
}

#[test]
fn reference_groups() {
    let name = |k, rho, chi| {
        detect_symmetry(&OrientedParams::new(k, rho, chi))
            .unwrap()
            .group_name
    };
    assert_eq!(name(K_TETRA, 0.0, 0.0), "Td");
    assert_eq!(name(0.0, 0.0, 0.0), "D∞h");
    assert_eq!(name(0.4, 0.0, 1.0), "D3h");
    assert_eq!(name(0.0, 0.8, 0.3), "D2h");
    assert_eq!(name(0.3, 0.7, FRAC_PI_6), "Dh");
    assert_eq!(name(0.3, 0.7, -FRAC_PI_2), "Dh");
    assert_eq!(name(0.4, 0.5, PI / 3.0), "e");
}

#[test]
fn disk_reflections_at_zero_chi_are_the_diagonals() {
    let r = detect_symmetry(&OrientedParams::new(0.0, 0.6, 0.0)).unwrap();
    let mut slopes: Vec<f64> = r.reflection_planes.iter().filter_map(|p| p.slope).collect();
    slopes.sort_by(f64::total_cmp);
    assert_eq!(slopes.len(), 2);
    assert!((slopes[0] + 1.0).abs() < 1e-9 && (slopes[1] - 1.0).abs() < 1e-9);
}

#[test]
fn axis_has_threefold_rotation_and_three_planes() {
    let r = detect_symmetry(&OrientedParams::new(0.4, 0.0, 0.0)).unwrap();
    assert_eq!(r.transforms.iter().filter(|x| x.s == 1).count(), 3);
    assert_eq!(r.reflection_planes.len(), 3);
}

#[test]
fn plane_at_pi_over_six_is_x_equals_root3_y() {
    let r = detect_symmetry(&OrientedParams::new(0.3, 0.7, FRAC_PI_6)).unwrap();
    assert_eq!(r.reflection_planes.len(), 1);
    let slope = r.reflection_planes[0].slope.unwrap();
    assert!((slope - 1.0 / 3.0f64.sqrt()).abs() < 1e-9);
}

#[test]
fn all_elements_fix_the_tetrahedral_potential() {
    let r = detect_symmetry(&OrientedParams::new(K_TETRA, 0.0, 0.0)).unwrap();
    assert_eq!(r.elements, (1..=24).collect::<Vec<_>>());
    assert!(is_tetrahedral(
        &OrientedParams::new(-K_TETRA, 0.0, 0.3),
        1e-12
    ));
}

fn permutes(p: OrientedParams) {
    let spec = solve_spectrum(&p, &SolverConfig::default()).unwrap();
    let sym = detect_symmetry(&p).unwrap();
    let els = td_elements();
    let mut maps: Vec<Mat3> = sym.transforms.iter().map(|x| x.matrix()).collect();
    maps.extend(sym.elements.iter().map(|&id| els[id - 1].matrix));
    for m in maps {
        for c in &spec.points {
            let img = m * c.cartesian();
            let hit = spec
                .points
                .iter()
                .find(|d| (d.cartesian() - img).norm() < 1e-7);
            let d = hit.unwrap_or_else(|| panic!("{p:?}: image of {c:?} missing"));
            assert!((d.lambda - c.lambda).abs() < 1e-9);
            assert_eq!(d.morse_type, c.morse_type);
        }
    }
}

#[test]
fn symmetries_permute_the_critical_set() {
    permutes(OrientedParams::new(K_TETRA, 0.0, 0.0));
    permutes(OrientedParams::new(0.4, 0.0, 0.0));
    permutes(OrientedParams::new(0.0, 0.6, 0.4));
    permutes(OrientedParams::new(0.0, 1.5, -1.0));
    permutes(OrientedParams::new(0.3, 0.7, FRAC_PI_6));
    permutes(OrientedParams::new(0.2, 1.2, -FRAC_PI_2));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn disk_slopes_are_perpendicular(chi in -1.5f64..1.5) {
        let (m1, m2) = disk_slopes(chi);
        prop_assert!((m1 * m2 + 1.0).abs() < 1e-9 * (1.0 + m1.abs() * m2.abs()));
    }

    #[test]
    fn detected_maps_leave_the_potential_invariant(k in 0.0f64..1.2, rho in 0.0f64..2.0, chi in -PI..PI, a in -1.5f64..1.5, b in -PI..PI) {
        let p = OrientedParams::new(k, rho, chi);
        let t = p.tensor().unwrap();
        let sym = detect_symmetry(&p).unwrap();
        let x = SphericalPoint::new(a, b).cartesian();
        for tr in &sym.transforms {
            prop_assert!((t.potential(&(tr.matrix() * x)) - t.potential(&x)).abs() < 1e-10);
        }
        prop_assert!(sym.transforms.iter().any(|tr| tr.s == 1 && tr.gamma == 0.0));
    }
}
