mod common;

use common::{fd_hessian, psi, random_cylinder, rng, set_distance, worst_residuals};
use octupolar::critical::poincare_hopf_index;
use octupolar::oracle::oracle_spectrum;
use octupolar::solver::{find_critical_points, monkey_saddle_check};
use octupolar::strata::{
    center_spectrum, d2h_spectrum, d3h_spectrum, d3h_zeta, degenerate_saddle_coefficients,
    degenerate_saddle_latitude, tetrahedral_spectrum, K_TETRA,
};
use octupolar::*;
use proptest::prelude::*;
use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, PI};
use std::time::Instant;

fn solve(k: f64, rho: f64, chi: f64) -> SpectrumReport {
    solve_spectrum(&OrientedParams::new(k, rho, chi), &SolverConfig::default()).unwrap()
}

#[test]
fn tetrahedral_point_has_fourteen_points() {
    let start = Instant::now();
    let r = solve(K_TETRA, 0.0, 0.0);
    let elapsed = start.elapsed().as_secs_f64();
    assert!(elapsed < 1.0, "{elapsed} s");
    assert_eq!(r.count(), 14);
    let near = |v: f64| {
        r.points
            .iter()
            .filter(|c| (c.lambda - v).abs() < 1e-10)
            .count()
    };
    assert_eq!((near(1.0), near(0.0), near(-1.0)), (4, 6, 4));
    assert_eq!((r.n_max, r.n_min, r.n_saddle), (4, 4, 6));
    assert_eq!(r.phase, Phase::Tetrahedral);

    let nu_m = (1.0f64 / 3.0).asin();
    let nu_s = (1.0 / 3.0f64.sqrt()).asin();
    for c in r
        .points
        .iter()
        .filter(|c| c.morse_type == MorseType::Max && !c.location.near_pole())
    {
        assert!((c.location.theta1 + nu_m).abs() < 1e-9, "{c:?}");
    }
    for c in r.points.iter().filter(|c| c.is_saddle()) {
        assert!((c.location.theta1.abs() - nu_s).abs() < 1e-9, "{c:?}");
    }
    assert!(r
        .points
        .iter()
        .any(|c| c.is_max_like() && (c.location.theta1 - FRAC_PI_2).abs() < 1e-9));
    assert_eq!(
        set_distance(&r.points, &tetrahedral_spectrum()).map(|d| d < 1e-9),
        Some(true)
    );
}

#[test]
fn axis_closed_form_matches_solver() {
    for k in [0.1, 0.5, FRAC_1_SQRT_2, 1.0] {
        let exact = d3h_spectrum(k).unwrap();
        let r = solve(k, 0.0, 0.0);
        let d = set_distance(&exact, &r.points).unwrap_or(f64::INFINITY);
        assert!(d < 1e-9, "K = {k}: {d}");
        let t = from_cylinder(k, 0.0, 0.0).unwrap();
        let (lam, res) = worst_residuals(&t, &exact);
        assert!(lam < 1e-12 && res < 1e-10);
    }
}

#[test]
fn axis_zeta_crosses_one_at_tetrahedral_k() {
    let (zm, zp) = d3h_zeta(FRAC_1_SQRT_2);
    assert!((zm - 1.0).abs() < 1e-12);
    assert!(zp.abs() < 1e-12);
    let f = |k: f64| d3h_zeta(k).0 - 1.0;
    let (mut lo, mut hi) = (0.3, 1.2);
    assert!(f(lo).signum() != f(hi).signum());
    while hi - lo > 1e-10 {
        let mid = 0.5 * (lo + hi);
        if f(mid).signum() == f(lo).signum() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    assert!(lo <= FRAC_1_SQRT_2 && FRAC_1_SQRT_2 <= hi, "[{lo}, {hi}]");
}

#[test]
fn disk_closed_form_matches_solver() {
    for rho in [0.5, 1.5] {
        for chi in [0.0, FRAC_PI_2] {
            let exact = d2h_spectrum(rho, chi).unwrap();
            let r = solve(0.0, rho, chi);
            let d = set_distance(&exact, &r.points).unwrap_or(f64::INFINITY);
            assert!(d < 1e-9, "rho = {rho}, chi = {chi}: {d}");
            assert_eq!(r.count(), 10);
            assert_eq!(r.phase, Phase::Disk);
        }
    }
}

#[test]
fn unit_disk_radius_has_two_monkey_saddles() {
    for chi in [0.0, 0.7, FRAC_PI_2] {
        let r = solve(0.0, 1.0, chi);
        assert_eq!(r.count(), 8, "chi = {chi}");
        assert_eq!(r.points.iter().filter(|c| c.index == -2).count(), 2);
        assert_eq!(r.index_sum, 2);
    }
}

#[test]
fn center_has_two_circles() {
    let r = solve(0.0, 0.0, 0.0);
    assert_eq!(r.count(), 2);
    assert_eq!(r.circles.len(), 2);
    assert_eq!(r.phase, Phase::Center);
    let s5 = 5.0f64.sqrt();
    let exact = center_spectrum();
    for (c, e) in r.circles.iter().zip(&exact.circles) {
        assert!((c.z() - e.z()).abs() < 1e-12);
        assert!((c.z().abs() - 1.0 / s5).abs() < 1e-12);
        assert!((c.multiplier + 3.0 * c.z()).abs() < 1e-12);
        assert!((c.value + c.z()).abs() < 1e-12);
        let soft = c
            .hessian_eigs
            .iter()
            .fold(f64::INFINITY, |m, v| m.min(v.abs()));
        let hard = c.hessian_eigs.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        assert!(soft < 1e-8);
        assert!((hard - 12.0 / s5).abs() < 1e-10);
    }
    for c in &r.points {
        let hard = c.hessian_eigs.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        assert!((hard - 6.0).abs() < 1e-10, "{c:?}");
    }
}

#[test]
fn fold_point_expansion_matches_finite_differences() {
    let rho = 1.5;
    let t = from_cylinder(curve_g(rho).unwrap(), rho, -FRAC_PI_2).unwrap();
    let at = SphericalPoint::new(degenerate_saddle_latitude(rho), -FRAC_PI_2);
    assert_eq!(poincare_hopf_index(&t, &at, 1e-3).unwrap(), 0);
    let e = monkey_saddle_check(&t, &at).unwrap();
    let (c0, q, cubic, mixed) = degenerate_saddle_coefficients(rho);
    assert!((c0 + 3.0f64.sqrt() / 2.0).abs() < 1e-12);
    assert!((e.coeff(0, 0) - c0).abs() < 1e-12);

    let (a, b) = (at.theta1, at.theta2);
    let h = 1e-3;
    let f = |u: f64, v: f64| psi(&t, a + u, b + v);
    let fvv = (f(0.0, h) - 2.0 * f(0.0, 0.0) + f(0.0, -h)) / (h * h);
    let fuuu = (f(2.0 * h, 0.0) - 2.0 * f(h, 0.0) + 2.0 * f(-h, 0.0) - f(-2.0 * h, 0.0))
        / (2.0 * h.powi(3));
    let fuvv = ((f(h, h) - 2.0 * f(h, 0.0) + f(h, -h)) - (f(-h, h) - 2.0 * f(-h, 0.0) + f(-h, -h)))
        / (2.0 * h.powi(3));
    let rel = |x: f64, y: f64| (x - y).abs() / y.abs();
    assert!(rel(fvv / 2.0, q) < 1e-4);
    assert!(rel(fuuu / 6.0, cubic) < 1e-4);
    assert!(rel(fuvv / 2.0, mixed) < 1e-4);
    assert!(rel(e.coeff(0, 2), q) < 1e-12);
    assert!(rel(e.coeff(3, 0), cubic) < 1e-12);
    assert!(rel(e.coeff(1, 2), mixed) < 1e-12);
    let hs = fd_hessian(&t, &at, 1e-4);
    assert!(hs[0][0].abs() < 1e-5 && hs[0][1].abs() < 1e-5);
}

#[test]
fn monkey_saddle_check_rejects_morse_points() {
    let t = from_cylinder(K_TETRA, 0.0, 0.0).unwrap();
    let err = monkey_saddle_check(&t, &SphericalPoint::new(-(1.0f64 / 3.0).asin(), FRAC_PI_2))
        .unwrap_err();
    assert!(matches!(err, Error::NotDegenerate(_)));
}

#[test]
fn errors_are_reported() {
    let cfg = SolverConfig::default();
    assert_eq!(
        solve_spectrum(&OrientedParams::new(0.2, 2.5, 0.0), &cfg).unwrap_err(),
        Error::OutsideCylinder(2.5)
    );
    assert_eq!(
        find_critical_points(&OctupolarTensor::zero(), &cfg, &[]).unwrap_err(),
        Error::ZeroTensor
    );
    let t = from_cylinder(0.3, 0.4, 0.5).unwrap();
    assert!(matches!(
        poincare_hopf_index(&t, &SphericalPoint::new(0.2, 0.2), 1e-3),
        Err(Error::NotCritical(_))
    ));
}

#[test]
fn serial_and_parallel_runs_agree() {
    let p = OrientedParams::new(0.37, 0.81, -0.4);
    let par = solve_spectrum(&p, &SolverConfig::default()).unwrap();
    let ser = solve_spectrum(
        &p,
        &SolverConfig {
            parallel: false,
            ..SolverConfig::default()
        },
    )
    .unwrap();
    assert_eq!(par, ser);
    assert_eq!(par, solve_spectrum(&p, &SolverConfig::default()).unwrap());
}

#[test]
fn solver_agrees_with_oracle_on_bulk_points() {
    let mut r = rng(7);
    let mut checked = 0;
    while checked < 8 {
        let (k, rho, chi) = random_cylinder(&mut r, 1.2);
        if !(0.05..=1.9).contains(&rho) || k < 0.05 {
            continue;
        }
        let p = OrientedParams::new(k, rho, chi);
        let fast = solve_spectrum(&p, &SolverConfig::default()).unwrap();
        let slow = oracle_spectrum(&p, 256, 512).unwrap();
        let d = set_distance(&fast.points, &slow.points);
        assert!(
            matches!(d, Some(d) if d < 1e-4),
            "{p:?}: {} vs {}",
            fast.count(),
            slow.count()
        );
        checked += 1;
    }
}

#[test]
fn bulk_sample_counts() {
    let r = solve(0.4, 0.5, -PI / 3.0);
    assert_eq!(r.phase, Phase::B4);
    assert_eq!(r.count(), 14);
    let r = solve(0.1, 0.5, -FRAC_PI_2 + 0.2);
    assert_eq!(r.count(), 10);
    assert_eq!(r.phase, Phase::B3);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn spectra_are_consistent(k in 0.0f64..1.5, u in 0.0f64..1.0, chi in -PI..PI) {
        let rho = 2.0 * u.sqrt();
        let r = solve(k, rho, chi);
        let t = from_cylinder(k, rho, chi).unwrap();
        let (lam, res) = worst_residuals(&t, &r.points);
        prop_assert!(lam < 1e-10, "lambda residual {lam}");
        prop_assert!(res < 1e-9, "eigen residual {res}");
        if r.circles.is_empty() {
            prop_assert_eq!(r.index_sum, 2);
        }
        prop_assert!(r.count() <= 14);
        prop_assert!(octupolar::strata::antipodally_closed(&r.points, 1e-8));
        prop_assert!(r.points.iter().any(|c| c.is_max_like() && (c.location.theta1 - FRAC_PI_2).abs() < 1e-9));
    }
}
