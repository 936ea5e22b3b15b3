//! Closed-form critical points on the symmetric strata of the parameter
//! cylinder: tetrahedral points, center, axis, disk and reflection planes.

use serde::{Deserialize, Serialize};
use std::f64::consts::{FRAC_PI_2, FRAC_PI_6, PI, SQRT_2};

use crate::critical::{classify_point, ClassifyOptions, CriticalCircle, CriticalPoint};
use crate::error::{Error, Result};
use crate::orientation::{from_cylinder, OrientedParams};
use crate::tensor::{sphere_distance, FullTensor, SphericalPoint, Vec3};

/// `K` at the tetrahedral points of the axis.
pub const K_TETRA: f64 = std::f64::consts::FRAC_1_SQRT_2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Plane {
    /// χ = ±π/2, invariant under x → −x.
    P0,
    /// χ = π/6 or −5π/6, reflection through x = √3 y.
    PPlus,
    /// χ = −π/6 or 5π/6, reflection through x = −√3 y.
    PMinus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum StratumLabel {
    Bulk,
    Center,
    Disk,
    Axis,
    Tetrahedral,
    ReflectionPlane(Plane),
}

impl StratumLabel {
    pub fn name(&self) -> &'static str {
        match self {
            StratumLabel::Bulk => "bulk B",
            StratumLabel::Center => "center C",
            StratumLabel::Disk => "disk D",
            StratumLabel::Axis => "axis A",
            StratumLabel::Tetrahedral => "tetrahedral T",
            StratumLabel::ReflectionPlane(Plane::P0) => "reflection plane P0",
            StratumLabel::ReflectionPlane(Plane::PPlus) => "reflection plane P+",
            StratumLabel::ReflectionPlane(Plane::PMinus) => "reflection plane P-",
        }
    }
}

/// The most specific stratum containing `p` within `tol`.
pub fn classify_stratum(p: &OrientedParams, tol: f64) -> StratumLabel {
    let k = p.k.abs();
    if p.rho <= tol {
        if k <= tol {
            return StratumLabel::Center;
        }
        if (k - K_TETRA).abs() <= tol {
            return StratumLabel::Tetrahedral;
        }
        return StratumLabel::Axis;
    }
    if k <= tol {
        return StratumLabel::Disk;
    }
    if p.chi.cos().abs() <= tol {
        StratumLabel::ReflectionPlane(Plane::P0)
    } else if (p.chi - FRAC_PI_6).sin().abs() <= tol {
        StratumLabel::ReflectionPlane(Plane::PPlus)
    } else if (p.chi + FRAC_PI_6).sin().abs() <= tol {
        StratumLabel::ReflectionPlane(Plane::PMinus)
    } else {
        StratumLabel::Bulk
    }
}

/// Separatrix section for χ = π/2.
pub fn curve_f(rho: f64) -> Result<f64> {
    check_rho(rho)?;
    Ok((2.0 * rho * rho * (1.0 + rho) / (3.0 * (6.0 + rho))).sqrt())
}

/// Separatrix section for χ = −π/2.
pub fn curve_g(rho: f64) -> Result<f64> {
    check_rho(rho)?;
    if rho <= 1.0 {
        Ok((2.0 * rho * rho * (1.0 - rho) / (3.0 * (6.0 - rho))).sqrt())
    } else {
        Ok((2.0 * (2.0 - rho) * (rho - 1.0)).max(0.0).sqrt())
    }
}

fn check_rho(rho: f64) -> Result<()> {
    if (0.0..=2.0).contains(&rho) {
        Ok(())
    } else {
        Err(Error::OutsideCylinder(rho))
    }
}

/// Classifies every point of a closed-form list against the tensor, merging
/// points closer than `1e-7`.
fn classify_list(full: &FullTensor, pts: &[SphericalPoint]) -> Vec<CriticalPoint> {
    let mut uniq: Vec<Vec3> = Vec::new();
    for sp in pts {
        let p = sp.cartesian();
        if uniq.iter().all(|q| sphere_distance(q, &p) >= 1e-7) {
            uniq.push(p);
        }
    }
    let opts = ClassifyOptions::default();
    uniq.iter()
        .enumerate()
        .map(|(i, p)| {
            let nn = uniq
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, q)| sphere_distance(p, q))
                .fold(PI, f64::min);
            let mut c = classify_point(full, p, nn, 1e-12, &opts);
            c.location = SphericalPoint::from_cartesian(p);
            c
        })
        .collect()
}

/// The 14 critical points of the tetrahedral potential `(K, ρ) = (1/√2, 0)`.
pub fn tetrahedral_spectrum() -> Vec<CriticalPoint> {
    let nu_m = (1.0_f64 / 3.0).asin();
    let nu_s = (1.0 / 3.0_f64.sqrt()).asin();
    let rows = [
        (-FRAC_PI_2, 0.0),
        (nu_m, -FRAC_PI_2),
        (nu_m, 5.0 * PI / 6.0),
        (nu_m, PI / 6.0),
        (-nu_s, -FRAC_PI_2),
        (-nu_s, 5.0 * PI / 6.0),
        (-nu_s, PI / 6.0),
        (nu_s, FRAC_PI_2),
        (nu_s, -5.0 * PI / 6.0),
        (nu_s, -PI / 6.0),
        (-nu_m, FRAC_PI_2),
        (-nu_m, -5.0 * PI / 6.0),
        (-nu_m, -PI / 6.0),
        (FRAC_PI_2, 0.0),
    ];
    let full = from_cylinder(K_TETRA, 0.0, 0.0)
        .expect("inside cylinder")
        .full();
    let pts: Vec<SphericalPoint> = rows
        .iter()
        .map(|&(a, b)| SphericalPoint::new(a, b))
        .collect();
    classify_list(&full, &pts)
}

/// Isolated poles and the two critical circles of the center stratum.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CenterSpectrum {
    pub poles: Vec<CriticalPoint>,
    pub circles: Vec<CriticalCircle>,
}

pub fn center_spectrum() -> CenterSpectrum {
    let full = from_cylinder(0.0, 0.0, 0.0)
        .expect("inside cylinder")
        .full();
    let poles = classify_list(&full, &[SphericalPoint::south(), SphericalPoint::north()]);
    let s5 = 5.0_f64.sqrt();
    let lat = (2.0 / s5).acos();
    let circles = vec![
        CriticalCircle {
            latitude: -lat,
            value: 1.0 / s5,
            multiplier: 3.0 / s5,
            hessian_eigs: [-12.0 / s5, 0.0],
        },
        CriticalCircle {
            latitude: lat,
            value: -1.0 / s5,
            multiplier: -3.0 / s5,
            hessian_eigs: [0.0, 12.0 / s5],
        },
    ];
    CenterSpectrum { poles, circles }
}

/// `(q−, q+)` shorthands of the axis stratum.
pub fn d3h_q(k: f64) -> (f64, f64) {
    let s = (4.0 + k * k).sqrt();
    (1.0 / (10.0 + k * k - k * s), 1.0 / (10.0 + k * k + k * s))
}

/// `(ζ−, ζ+)`: values at the secondary maxima and at the northern saddles.
pub fn d3h_zeta(k: f64) -> (f64, f64) {
    let s = (4.0 + k * k).sqrt();
    let (qm, qp) = d3h_q(k);
    let zm = (2.0 * qm.powi(3)).sqrt() * (k.powi(3) - k * k * s + 13.0 * k + 5.0 * s);
    let zp = (2.0 * qp.powi(3)).sqrt() * (k.powi(3) + k * k * s + 13.0 * k - 5.0 * s);
    (zm, zp)
}

/// `(τ−, τ+)`: latitudes of maxima and saddles on the meridians with
/// `sin 3θ2 = −1`.
pub fn d3h_tau(k: f64) -> (f64, f64) {
    let s = (4.0 + k * k).sqrt();
    (((k - s) / 4.0).atan(), ((k + s) / 4.0).atan())
}

/// Hessian eigenvalues on the axis stratum; `plus` selects the meridians
/// with `sin 3θ2 = +1`.
pub fn d3h_hessian(k: f64, theta1: f64, plus: bool) -> [f64; 2] {
    let (s, c) = theta1.sin_cos();
    let (s3, c3) = (3.0 * theta1).sin_cos();
    let (a, b) = if plus {
        (
            9.0 * k * c.powi(3),
            3.0 / 8.0 * (2.0 * k * c + 6.0 * k * c3 - s + 15.0 * s3),
        )
    } else {
        (
            -9.0 * k * c.powi(3),
            -3.0 / 8.0 * (2.0 * k * c + 6.0 * k * c3 + s - 15.0 * s3),
        )
    };
    if a <= b {
        [a, b]
    } else {
        [b, a]
    }
}

/// The 14 critical points of the axis stratum `ρ = 0`, `K = k > 0`.
pub fn d3h_spectrum(k: f64) -> Result<Vec<CriticalPoint>> {
    if k <= 0.0 || !k.is_finite() {
        return Err(Error::NonPositiveK(k));
    }
    let (tm, tp) = d3h_tau(k);
    let minus_mer = [-5.0 * PI / 6.0, -PI / 6.0, FRAC_PI_2];
    let plus_mer = [-FRAC_PI_2, PI / 6.0, 5.0 * PI / 6.0];
    let mut pts = vec![(SphericalPoint::south(), None)];
    for &t2 in &plus_mer {
        pts.push((SphericalPoint::new(-tm, t2), Some(true)));
    }
    for &t2 in &plus_mer {
        pts.push((SphericalPoint::new(-tp, t2), Some(true)));
    }
    for &t2 in &minus_mer {
        pts.push((SphericalPoint::new(tp, t2), Some(false)));
    }
    for &t2 in &minus_mer {
        pts.push((SphericalPoint::new(tm, t2), Some(false)));
    }
    pts.push((SphericalPoint::north(), None));
    let full = from_cylinder(k, 0.0, 0.0)?.full();
    let locs: Vec<SphericalPoint> = pts.iter().map(|(s, _)| *s).collect();
    let mut out = classify_list(&full, &locs);
    for (c, (sp, mer)) in out.iter_mut().zip(pts.iter()) {
        if let Some(plus) = mer {
            c.hessian_eigs = d3h_hessian(k, sp.theta1, *plus);
        }
    }
    Ok(out)
}

/// Disk latitudes `(r+, r−)`; `r−` is `None` for `ρ > 1`.
pub fn d2h_r(rho: f64) -> (f64, Option<f64>) {
    let rp = 0.5 * ((rho + 3.0) / (3.0 * rho + 5.0)).acos();
    let rm = if rho <= 1.0 {
        Some(0.5 * ((rho - 3.0) / (3.0 * rho - 5.0)).clamp(-1.0, 1.0).acos())
    } else {
        None
    };
    (rp, rm)
}

/// Critical points of the disk stratum `K = 0`.
pub fn d2h_spectrum(rho: f64, chi: f64) -> Result<Vec<CriticalPoint>> {
    if !(rho > 0.0 && rho <= 2.0) {
        return Err(Error::OutsideCylinder(rho));
    }
    let (rp, rm) = d2h_r(rho);
    let mut base = vec![SphericalPoint::south()];
    for t2 in [-FRAC_PI_2, FRAC_PI_2] {
        base.push(SphericalPoint::new(rp, t2));
    }
    if let Some(rm) = rm {
        for (t1, t2) in [(rm, 0.0), (-rm, 0.0), (-rm, PI), (rm, PI)] {
            base.push(SphericalPoint::new(t1, t2));
        }
    }
    if rho >= 1.0 {
        let r0 = (1.0 / rho).acos();
        for t2 in [-0.5 * r0, 0.5 * r0, PI - 0.5 * r0, PI + 0.5 * r0] {
            base.push(SphericalPoint::new(0.0, t2));
        }
    }
    for t2 in [-FRAC_PI_2, FRAC_PI_2] {
        base.push(SphericalPoint::new(-rp, t2));
    }
    base.push(SphericalPoint::north());
    let shift = PI / 4.0 - chi / 2.0;
    let pts: Vec<SphericalPoint> = base
        .iter()
        .map(|sp| {
            if sp.near_pole() {
                *sp
            } else {
                SphericalPoint::new(sp.theta1, wrap_angle(sp.theta2 + shift))
            }
        })
        .collect();
    let full = from_cylinder(0.0, rho, chi)?.full();
    Ok(classify_list(&full, &pts))
}

/// Wraps an angle into `(−π, π]`.
pub fn wrap_angle(a: f64) -> f64 {
    let mut a = a % (2.0 * PI);
    if a > PI {
        a -= 2.0 * PI;
    } else if a <= -PI {
        a += 2.0 * PI;
    }
    a
}

/// Critical points on the reflection planes χ = ±π/2 (`positive` selects +π/2).
pub fn reflection_plane_spectrum(k: f64, rho: f64, positive: bool) -> Result<Vec<CriticalPoint>> {
    check_rho(rho)?;
    let k = k.abs();
    let chi = if positive { FRAC_PI_2 } else { -FRAC_PI_2 };
    if k == 0.0 {
        return d2h_spectrum(rho, chi);
    }
    let full = from_cylinder(k, rho, chi)?.full();
    // χ = −π/2 is the χ = +π/2 problem with ρ replaced by −ρ
    let r = if positive { rho } else { -rho };
    let mut cand = vec![SphericalPoint::south(), SphericalPoint::north()];

    let alpha = 5.0 + 2.0 * k * k + 8.0 * r + 3.0 * r * r;
    let disc = 4.0 + k * k + 6.0 * r + 2.0 * r * r;
    let gamma = 4.0 * k * k + (5.0 + 3.0 * r).powi(2);
    if disc >= -1e-15 {
        let beta = 2.0 * k * disc.max(0.0).sqrt();
        for v in [alpha + beta, alpha - beta] {
            if v >= 0.0 && gamma > 0.0 {
                let x = (v / gamma).sqrt().min(1.0);
                for sx in [x, -x] {
                    for t2 in [FRAC_PI_2, -FRAC_PI_2] {
                        cand.push(SphericalPoint::new(sx.asin(), t2));
                    }
                }
            }
        }
    }

    let a = 2.0 * k * k * (4.0 - r) + r * r * (1.0 - r);
    let c = 4.0 * (8.0 * k * k - r.powi(3));
    let b = a * a + 4.0 * k * k * (2.0 - r) * (r.powi(3) - 8.0 * k * k);
    if b >= 0.0 && c.abs() > 1e-300 && rho > 0.0 {
        let bb = b.sqrt();
        for y2 in [(a + bb) / c, (a - bb) / c] {
            if !(0.0..=1.0).contains(&y2) {
                continue;
            }
            for y in [y2.sqrt(), -y2.sqrt()] {
                if y.abs() < 1e-300 {
                    continue;
                }
                let w = 1.0 - 4.0 * y * y;
                let x =
                    -k * w / (2.0 * r * y * (1.0 + k * k * w * w / (4.0 * r * r * y * y)).sqrt());
                let t1 = x.clamp(-1.0, 1.0).asin();
                let t2a = y.asin();
                for t2 in [t2a, wrap_angle(PI - t2a)] {
                    cand.push(SphericalPoint::new(t1, t2));
                }
            }
        }
    }

    let accepted: Vec<SphericalPoint> = cand
        .into_iter()
        .filter(|sp| full.riemannian_gradient(&sp.cartesian()).norm() < 1e-9)
        .collect();
    Ok(classify_list(&full, &accepted))
}

/// Closed-form latitude of the index-zero point at `χ = −π/2, K = g(ρ)`, `1 < ρ < 2`.
pub fn degenerate_saddle_latitude(rho: f64) -> f64 {
    -((rho - 1.0) / (3.0 - rho)).sqrt().asin()
}

/// Third-order expansion coefficients at the index-zero point, as
/// `(constant, θ2², θ1³, θ2²θ1)`.
pub fn degenerate_saddle_coefficients(rho: f64) -> (f64, f64, f64, f64) {
    let constant = -((rho - 1.0) * (3.0 - rho)).sqrt();
    let q = 12.0 * (2.0 - rho) * ((rho - 1.0) / (3.0 - rho)).sqrt();
    let cubic = 0.5 * (2.0 * (2.0 - rho) * (3.0 - rho)).sqrt();
    let mixed = 3.0 * SQRT_2 * (5.0 * rho - 6.0) * ((2.0 - rho) / (3.0 - rho)).sqrt();
    (constant, q, cubic, mixed)
}

/// Counts of a closed-form list by type: `(max, min, saddle)`.
pub fn type_counts(points: &[CriticalPoint]) -> (usize, usize, usize) {
    let n_max = points.iter().filter(|c| c.is_max_like()).count();
    let n_min = points.iter().filter(|c| c.is_min_like()).count();
    let n_sad = points.iter().filter(|c| c.is_saddle()).count();
    (n_max, n_min, n_sad)
}

/// Whether every point is paired with its antipode at opposite eigenvalue.
pub fn antipodally_closed(points: &[CriticalPoint], tol: f64) -> bool {
    points.iter().all(|c| {
        let a = -c.cartesian();
        points
            .iter()
            .any(|d| sphere_distance(&d.cartesian(), &a) < tol && (d.lambda + c.lambda).abs() < tol)
    })
}
