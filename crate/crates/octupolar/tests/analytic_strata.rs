mod common;

use common::*;
use octupolar::strata::*;
use octupolar::{
    curve_f, curve_g, from_cylinder, solve_spectrum, CriticalPoint, Error, MorseType,
    OrientedParams, SolverConfig, SphericalPoint, StratumLabel,
};
use proptest::prelude::*;
use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, FRAC_PI_6, PI, SQRT_2};

fn count_type(pts: &[CriticalPoint], m: MorseType) -> usize {
    pts.iter().filter(|c| c.morse_type == m).count()
}

#[test]
fn stratum_examples() {
    assert_eq!(
        classify_stratum(&OrientedParams::new(FRAC_1_SQRT_2, 0.0, 0.0), 1e-12),
        StratumLabel::Tetrahedral
    );
    assert_eq!(
        classify_stratum(&OrientedParams::new(0.0, 0.0, 0.0), 1e-12),
        StratumLabel::Center
    );
    assert_eq!(
        classify_stratum(&OrientedParams::new(0.3, 0.7, -FRAC_PI_2), 1e-12),
        StratumLabel::ReflectionPlane(Plane::P0)
    );
    assert_eq!(
        classify_stratum(&OrientedParams::new(0.0, 0.7, 0.3), 1e-12),
        StratumLabel::Disk
    );
    assert_eq!(
        classify_stratum(&OrientedParams::new(0.3, 0.0, 0.3), 1e-12),
        StratumLabel::Axis
    );
    assert_eq!(
        classify_stratum(&OrientedParams::new(0.3, 0.7, FRAC_PI_6), 1e-12),
        StratumLabel::ReflectionPlane(Plane::PPlus)
    );
    assert_eq!(
        classify_stratum(&OrientedParams::new(0.3, 0.7, -FRAC_PI_6), 1e-12),
        StratumLabel::ReflectionPlane(Plane::PMinus)
    );
    assert_eq!(
        classify_stratum(&OrientedParams::new(0.3, 0.7, -1.0), 1e-12),
        StratumLabel::Bulk
    );
}

#[test]
fn tetrahedral_points() {
    let pts = tetrahedral_spectrum();
    assert_eq!(pts.len(), 14);
    assert_eq!(count_type(&pts, MorseType::Max), 4);
    assert_eq!(count_type(&pts, MorseType::Min), 4);
    assert_eq!(count_type(&pts, MorseType::Saddle), 6);
    let nu_m = (1.0f64 / 3.0).asin();
    let nu_s = (1.0 / 3.0f64.sqrt()).asin();
    let find = |a: f64, b: f64| {
        pts.iter()
            .find(|c| c.location.distance(&SphericalPoint::new(a, b)) < 1e-12)
            .expect("listed point")
    };
    let top = find(-nu_m, FRAC_PI_2);
    assert_eq!(top.morse_type, MorseType::Max);
    assert!((top.lambda - 1.0).abs() < 1e-15);
    let s = find(-nu_s, -FRAC_PI_2);
    assert_eq!(s.morse_type, MorseType::Saddle);
    assert!(s.lambda.abs() < 1e-15);
    let t = from_cylinder(K_TETRA, 0.0, 0.0).unwrap();
    let (lam, res) = worst_residuals(&t, &pts);
    assert!(lam < 1e-14 && res < 1e-12);
}

#[test]
fn center_points_and_circles() {
    let c = center_spectrum();
    let north = c.poles.iter().find(|p| p.location.theta1 > 0.0).unwrap();
    assert_eq!(north.morse_type, MorseType::Max);
    assert_eq!(north.lambda, 1.0);
    let s5 = 5.0f64.sqrt();
    let south = c.circles.iter().find(|k| k.latitude < 0.0).unwrap();
    assert!((south.latitude + (2.0 / s5).acos()).abs() < 1e-15);
    assert!((south.value - 1.0 / s5).abs() < 1e-15);
    assert!(south.is_max_like());
    let t = from_cylinder(0.0, 0.0, 0.0).unwrap();
    let full = t.full();
    for k in &c.circles {
        for j in 0..36 {
            let p = SphericalPoint::new(k.latitude, -PI + j as f64 * PI / 18.0).cartesian();
            assert!(full.riemannian_gradient(&p).norm() < 1e-12);
            assert!((t.potential(&p) - k.value).abs() < 1e-14);
        }
    }
}

#[test]
fn axis_at_the_tetrahedral_value() {
    let (zm, zp) = d3h_zeta(K_TETRA);
    assert!((zm - 1.0).abs() < 1e-12);
    assert!(zp.abs() < 1e-12);
    let (tm, _) = d3h_tau(K_TETRA);
    assert!((tm.abs() - (1.0f64 / 3.0).asin()).abs() < 1e-12);
    assert!(
        set_distance(&d3h_spectrum(K_TETRA).unwrap(), &tetrahedral_spectrum()).unwrap() < 1e-12
    );
}

#[test]
fn axis_residuals_and_hessians() {
    for k in [0.05, 0.1, 0.5, 0.9, 1.0, 2.0, 5.0] {
        let t = from_cylinder(k, 0.0, 0.0).unwrap();
        let pts = d3h_spectrum(k).unwrap();
        assert_eq!(pts.len(), 14);
        let (lam, res) = worst_residuals(&t, &pts);
        assert!(lam < 1e-12 && res < 1e-11, "k = {k}");
        for c in pts.iter().filter(|c| !c.location.near_pole()) {
            let fd = fd_hessian(&t, &c.location, 1e-4);
            let m = nalgebra::Matrix2::new(fd[0][0], fd[0][1], fd[1][0], fd[1][1]);
            let e = octupolar::tensor::sym2_eigenvalues(&m);
            assert!(
                (e[0] - c.hessian_eigs[0]).abs() < 1e-5 && (e[1] - c.hessian_eigs[1]).abs() < 1e-5,
                "k = {k}"
            );
        }
    }
}

#[test]
fn axis_saddle_value_increases() {
    let mut last = f64::NEG_INFINITY;
    for n in 1..400 {
        let (_, zp) = d3h_zeta(0.01 * n as f64);
        assert!(zp > last);
        last = zp;
    }
}

#[test]
fn axis_rejects_nonpositive_k() {
    assert!(matches!(d3h_spectrum(0.0), Err(Error::NonPositiveK(_))));
    assert!(matches!(d3h_spectrum(-0.2), Err(Error::NonPositiveK(_))));
}

#[test]
fn axis_matches_the_solver() {
    let cfg = SolverConfig::default();
    for k in [0.1, 0.5, FRAC_1_SQRT_2, 1.0] {
        let r = solve_spectrum(&OrientedParams::new(k, 0.0, 0.0), &cfg).unwrap();
        assert!(
            set_distance(&d3h_spectrum(k).unwrap(), &r.points).unwrap() < 1e-9,
            "k = {k}"
        );
    }
}

#[test]
fn disk_maxima_value() {
    let rho = 0.5;
    let pts = d2h_spectrum(rho, FRAC_PI_2).unwrap();
    let (rp, _) = d2h_r(rho);
    let secondary: Vec<&CriticalPoint> = pts
        .iter()
        .filter(|c| c.is_max_like() && !c.location.near_pole())
        .collect();
    assert_eq!(secondary.len(), 2);
    for c in secondary {
        assert!((c.lambda - (rho + 1.0) * rp.sin()).abs() < 1e-12);
        assert!((c.location.theta1 + rp).abs() < 1e-12);
    }
}

#[test]
fn disk_merger_at_unit_radius() {
    let pts = d2h_spectrum(1.0, FRAC_PI_2).unwrap();
    assert_eq!(pts.len(), 8);
    let merged: Vec<&CriticalPoint> = pts.iter().filter(|c| c.index == -2).collect();
    assert_eq!(merged.len(), 2);
    for c in merged {
        assert!(c.location.theta1.abs() < 1e-12);
        assert_eq!(c.morse_type, MorseType::DegenerateSaddle);
    }
    assert_eq!(pts.iter().map(|c| c.index).sum::<i32>(), 2);
}

#[test]
fn disk_equatorial_saddles() {
    let rho = 1.5;
    let t = from_cylinder(0.0, rho, 0.0).unwrap();
    let pts = d2h_spectrum(rho, 0.0).unwrap();
    let eq: Vec<&CriticalPoint> = pts
        .iter()
        .filter(|c| c.location.theta1.abs() < 1e-12)
        .collect();
    assert_eq!(eq.len(), 4);
    for c in &eq {
        assert_eq!(c.morse_type, MorseType::Saddle);
        assert!(c.lambda.abs() < 1e-12);
    }
    let (_, res) = worst_residuals(&t, &pts);
    assert!(res < 1e-11);
}

#[test]
fn disk_matches_the_solver() {
    let cfg = SolverConfig::default();
    for rho in [0.5, 1.5] {
        for chi in [0.0, FRAC_PI_2] {
            let exact = d2h_spectrum(rho, chi).unwrap();
            let r = solve_spectrum(&OrientedParams::new(0.0, rho, chi), &cfg).unwrap();
            assert!(
                set_distance(&exact, &r.points).unwrap() < 1e-9,
                "rho = {rho}, chi = {chi}"
            );
            for c in &exact {
                let n = r
                    .points
                    .iter()
                    .find(|q| q.location.distance(&c.location) < 1e-9)
                    .unwrap();
                assert!((n.lambda - c.lambda).abs() < 1e-9);
            }
        }
    }
}

#[test]
fn disk_rejects_bad_radius() {
    assert!(matches!(
        d2h_spectrum(0.0, 0.0),
        Err(Error::OutsideCylinder(_))
    ));
    assert!(matches!(
        d2h_spectrum(2.5, 0.0),
        Err(Error::OutsideCylinder(_))
    ));
}

#[test]
fn positive_plane_counts_across_the_fold() {
    let rho = 0.5;
    let f = curve_f(rho).unwrap();
    assert!((f - (2.0 * 0.25 * 1.5 / (3.0 * 6.5f64)).sqrt()).abs() < 1e-15);
    assert_eq!(reflection_plane_spectrum(0.5, rho, true).unwrap().len(), 14);
    assert_eq!(reflection_plane_spectrum(0.1, rho, true).unwrap().len(), 10);
}

#[test]
fn negative_plane_counts() {
    for rho in [0.3, 0.7, 1.3, 1.7] {
        let g = curve_g(rho).unwrap();
        assert_eq!(
            reflection_plane_spectrum(g + 0.05, rho, false)
                .unwrap()
                .len(),
            14,
            "rho = {rho}"
        );
        assert_eq!(
            reflection_plane_spectrum(0.5 * g, rho, false)
                .unwrap()
                .len(),
            10,
            "rho = {rho}"
        );
    }
}

#[test]
fn negative_plane_on_the_curve() {
    for rho in [0.3, 0.6] {
        let pts = reflection_plane_spectrum(curve_g(rho).unwrap(), rho, false).unwrap();
        assert_eq!(pts.len(), 10);
        assert!(pts.iter().all(|c| c.index.abs() == 1));
    }
    let rho = 1.5;
    let pts = reflection_plane_spectrum(curve_g(rho).unwrap(), rho, false).unwrap();
    assert_eq!(pts.len(), 12);
    let zero: Vec<&CriticalPoint> = pts.iter().filter(|c| c.index == 0).collect();
    assert_eq!(zero.len(), 2);
    let ts = degenerate_saddle_latitude(rho);
    assert!((ts + (1.0 / 3.0f64.sqrt()).asin()).abs() < 1e-15);
    assert!(zero
        .iter()
        .any(|c| c.location.distance(&SphericalPoint::new(ts, -FRAC_PI_2)) < 1e-7));
    let edge = reflection_plane_spectrum(0.0, 2.0, false).unwrap();
    assert_eq!(edge.len(), 10);
    let unit = reflection_plane_spectrum(0.0, 1.0, false).unwrap();
    assert_eq!(unit.len(), 8);
    assert_eq!(unit.iter().filter(|c| c.index == -2).count(), 2);
}

#[test]
fn curve_values() {
    assert!((curve_f(2.0).unwrap() - 1.0).abs() < 1e-15);
    assert_eq!(curve_f(0.0).unwrap(), 0.0);
    assert_eq!(curve_g(0.0).unwrap(), 0.0);
    assert_eq!(curve_g(1.0).unwrap(), 0.0);
    assert_eq!(curve_g(2.0).unwrap(), 0.0);
    assert!(
        (curve_g(1.0 - 1e-9).unwrap()).abs() < 1e-4 && (curve_g(1.0 + 1e-9).unwrap()).abs() < 1e-4
    );
    assert!((curve_g(1.5).unwrap() - FRAC_1_SQRT_2).abs() < 1e-15);
    assert!((curve_g(0.8).unwrap() - 0.128_102_523).abs() < 1e-8);
    assert!((curve_f(1.0).unwrap() - (4.0f64 / 21.0).sqrt()).abs() < 1e-15);
    assert!(matches!(curve_f(2.1), Err(Error::OutsideCylinder(_))));
    assert!(matches!(curve_g(-0.1), Err(Error::OutsideCylinder(_))));
}

#[test]
fn degenerate_saddle_closed_form() {
    let (c0, q, cubic, mixed) = degenerate_saddle_coefficients(1.5);
    assert!((c0 + 3.0f64.sqrt() / 2.0).abs() < 1e-15);
    assert!((q - 6.0 / 3.0f64.sqrt()).abs() < 1e-14);
    assert!((cubic - 0.5 * 1.5f64.sqrt()).abs() < 1e-15);
    assert!((mixed - 3.0 * SQRT_2 * 1.5 * (0.5f64 / 1.5).sqrt()).abs() < 1e-14);
}

fn strata_lists() -> Vec<(OrientedParams, Vec<CriticalPoint>)> {
    let mut out = vec![(
        OrientedParams::new(K_TETRA, 0.0, 0.0),
        tetrahedral_spectrum(),
    )];
    for k in [0.1, 0.5, 1.2, 3.0] {
        out.push((OrientedParams::new(k, 0.0, 0.0), d3h_spectrum(k).unwrap()));
    }
    for rho in [0.2, 0.5, 1.0, 1.5, 2.0] {
        for chi in [0.0, -1.0, FRAC_PI_2] {
            out.push((
                OrientedParams::new(0.0, rho, chi),
                d2h_spectrum(rho, chi).unwrap(),
            ));
        }
    }
    for (k, rho) in [(0.1, 0.5), (0.5, 0.5), (0.3, 1.5), (1.0, 1.9)] {
        out.push((
            OrientedParams::new(k, rho, FRAC_PI_2),
            reflection_plane_spectrum(k, rho, true).unwrap(),
        ));
        out.push((
            OrientedParams::new(k, rho, -FRAC_PI_2),
            reflection_plane_spectrum(k, rho, false).unwrap(),
        ));
    }
    out
}

#[test]
fn strata_lists_are_consistent() {
    for (p, pts) in strata_lists() {
        let t = p.tensor().unwrap();
        let (lam, res) = worst_residuals(&t, &pts);
        assert!(lam < 1e-10 && res < 1e-10, "{p:?}");
        assert!(antipodally_closed(&pts, 1e-9), "{p:?}");
        assert_eq!(pts.iter().map(|c| c.index).sum::<i32>(), 2, "{p:?}");
        if pts.iter().all(|c| c.lambda <= 1.0 + 1e-12) {
            for c in pts
                .iter()
                .filter(|c| c.is_max_like() && !c.location.near_pole())
            {
                assert!(c.location.theta1 < 0.0, "{p:?}");
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn plane_lists_are_consistent(k in 0.01f64..2.0, rho in 0.01f64..2.0, positive in any::<bool>()) {
        let pts = reflection_plane_spectrum(k, rho, positive).unwrap();
        let chi = if positive { FRAC_PI_2 } else { -FRAC_PI_2 };
        let t = from_cylinder(k, rho, chi).unwrap();
        let (lam, res) = worst_residuals(&t, &pts);
        prop_assert!(lam < 1e-10 && res < 1e-10);
        prop_assert!(antipodally_closed(&pts, 1e-9));
        prop_assert!(pts.len() <= 14);
    }

    #[test]
    fn disk_lists_are_consistent(rho in 0.01f64..=2.0, chi in -PI..PI) {
        let pts = d2h_spectrum(rho, chi).unwrap();
        let t = from_cylinder(0.0, rho, chi).unwrap();
        let (lam, res) = worst_residuals(&t, &pts);
        prop_assert!(lam < 1e-10 && res < 1e-10);
        prop_assert!(antipodally_closed(&pts, 1e-9));
        prop_assert_eq!(pts.iter().map(|c| c.index).sum::<i32>(), 2);
    }
}
