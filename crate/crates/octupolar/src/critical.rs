//! Critical points of the potential on the sphere, their Morse type and
//! Poincaré–Hopf index.

use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::tensor::{
    sym2_eigenvalues, tangent_frame, FullTensor, OctupolarTensor, SphericalPoint, Vec3,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MorseType {
    Max,
    Min,
    Saddle,
    DegenerateSaddle,
    DegenerateExtremum,
    CircleDegenerate,
}

impl MorseType {
    pub fn label(&self) -> &'static str {
        match self {
            MorseType::Max => "max",
            MorseType::Min => "min",
            MorseType::Saddle => "saddle",
            MorseType::DegenerateSaddle => "degenerate saddle",
            MorseType::DegenerateExtremum => "degenerate extremum",
            MorseType::CircleDegenerate => "circle",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CriticalPoint {
    pub location: SphericalPoint,
    /// Eigenvalue, equal to the potential at the point.
    pub lambda: f64,
    /// Coordinate Hessian eigenvalues, ascending.
    pub hessian_eigs: [f64; 2],
    pub morse_type: MorseType,
    pub index: i32,
    /// Norm of the tangential gradient at the reported location.
    pub residual: f64,
}

impl CriticalPoint {
    pub fn cartesian(&self) -> Vec3 {
        self.location.cartesian()
    }

    pub fn is_max_like(&self) -> bool {
        match self.morse_type {
            MorseType::Max => true,
            MorseType::DegenerateExtremum => self.hessian_eigs[0] + self.hessian_eigs[1] < 0.0,
            _ => false,
        }
    }

    pub fn is_min_like(&self) -> bool {
        match self.morse_type {
            MorseType::Min => true,
            MorseType::DegenerateExtremum => self.hessian_eigs[0] + self.hessian_eigs[1] >= 0.0,
            _ => false,
        }
    }

    pub fn is_saddle(&self) -> bool {
        matches!(
            self.morse_type,
            MorseType::Saddle | MorseType::DegenerateSaddle
        )
    }

    pub fn is_degenerate(&self) -> bool {
        matches!(
            self.morse_type,
            MorseType::DegenerateSaddle
                | MorseType::DegenerateExtremum
                | MorseType::CircleDegenerate
        )
    }
}

/// A latitude circle made entirely of critical points.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CriticalCircle {
    pub latitude: f64,
    /// Value of the potential (the eigenvalue) on the circle.
    pub value: f64,
    /// Multiplier `μ` in `∇Φ = μ x`, three times the eigenvalue.
    pub multiplier: f64,
    pub hessian_eigs: [f64; 2],
}

impl CriticalCircle {
    pub fn z(&self) -> f64 {
        self.latitude.sin()
    }

    pub fn is_max_like(&self) -> bool {
        self.hessian_eigs[0] + self.hessian_eigs[1] < 0.0
    }
}

/// Tuning knobs for point classification.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassifyOptions {
    pub degeneracy_tol: f64,
    pub index_samples: usize,
    pub index_radius: f64,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        Self {
            degeneracy_tol: 1e-8,
            index_samples: 32,
            index_radius: 1e-3,
        }
    }
}

/// Winding number of the tangential gradient along a small loop around `p`.
pub fn winding_index(full: &FullTensor, p: &Vec3, radius: f64, samples: usize) -> Result<i32> {
    let p = p.normalize();
    let (e1, e2) = tangent_frame(&p);
    let field_angle = |phi: f64| -> Result<f64> {
        let q = (p + radius * (phi.cos() * e1 + phi.sin() * e2)).normalize();
        let g = full.riemannian_gradient(&q);
        if g.norm() < 1e-12 {
            return Err(Error::LoopHitsSingularity);
        }
        Ok(g.dot(&e2).atan2(g.dot(&e1)))
    };
    let n = samples.max(8);
    let step = 2.0 * PI / n as f64;
    let mut total = 0.0;
    let mut a0 = field_angle(0.0)?;
    for i in 0..n {
        let (lo, hi) = (i as f64 * step, (i + 1) as f64 * step);
        total += arc_turn(&field_angle, lo, hi, a0, 0)?;
        a0 = field_angle(hi)?;
    }
    Ok((total / (2.0 * PI)).round() as i32)
}

fn wrap(d: f64) -> f64 {
    let mut d = d % (2.0 * PI);
    if d > PI {
        d -= 2.0 * PI;
    } else if d <= -PI {
        d += 2.0 * PI;
    }
    d
}

fn arc_turn<F: Fn(f64) -> Result<f64>>(
    f: &F,
    lo: f64,
    hi: f64,
    a_lo: f64,
    depth: u32,
) -> Result<f64> {
    let a_hi = f(hi)?;
    let d = wrap(a_hi - a_lo);
    if d.abs() < PI / 4.0 || depth > 14 {
        return Ok(d);
    }
    let mid = 0.5 * (lo + hi);
    let a_mid = f(mid)?;
    Ok(arc_turn(f, lo, mid, a_lo, depth + 1)? + arc_turn(f, mid, hi, a_mid, depth + 1)?)
}

/// Poincaré–Hopf index of an isolated critical point.
pub fn poincare_hopf_index(
    t: &OctupolarTensor,
    location: &SphericalPoint,
    radius: f64,
) -> Result<i32> {
    let full = t.full();
    let p = location.cartesian();
    let g = full.riemannian_gradient(&p).norm();
    if g > 1e-8 {
        return Err(Error::NotCritical(g));
    }
    winding_index(&full, &p, radius, 32)
}

/// Builds a classified critical point at `p`.
///
/// `neighbor_dist` bounds the index loop so that no other critical point is
/// enclosed; `location_err` is an estimate of how far `p` may be from the
/// exact critical point.
pub fn classify_point(
    full: &FullTensor,
    p: &Vec3,
    neighbor_dist: f64,
    location_err: f64,
    opts: &ClassifyOptions,
) -> CriticalPoint {
    let p = p.normalize();
    let lambda = full.potential(&p);
    let residual = full.riemannian_gradient(&p).norm();
    let (h, _) = full.chart_hessian(&p);
    let eigs = sym2_eigenvalues(&h);
    let scale = eigs[0].abs().max(eigs[1].abs());
    let tol = opts.degeneracy_tol * scale.max(1.0);
    let small = eigs[0].abs() <= tol || eigs[1].abs() <= tol;
    let signature = if eigs[0] > 0.0 || eigs[1] < 0.0 {
        1
    } else {
        -1
    };

    let upper = opts.index_radius.min(0.4 * neighbor_dist);
    let lower = (20.0 * location_err).max(1e-9);
    let radius = if lower < upper {
        upper
    } else {
        lower.min(opts.index_radius)
    };
    let wound = winding_index(full, &p, radius, opts.index_samples).ok();

    let degenerate = small || matches!(wound, Some(w) if w != signature);
    let index = if degenerate {
        wound.unwrap_or(signature)
    } else {
        signature
    };
    let morse_type = if !degenerate {
        if eigs[1] < 0.0 {
            MorseType::Max
        } else if eigs[0] > 0.0 {
            MorseType::Min
        } else {
            MorseType::Saddle
        }
    } else if index == 1 {
        MorseType::DegenerateExtremum
    } else {
        MorseType::DegenerateSaddle
    };
    CriticalPoint {
        location: SphericalPoint::from_cartesian(&p),
        lambda,
        hessian_eigs: eigs,
        morse_type,
        index,
        residual,
    }
}

/// Orders points by eigenvalue, then latitude, then longitude.
pub fn sort_points(points: &mut [CriticalPoint]) {
    let key = |c: &CriticalPoint| {
        let r = |v: f64| (v * 1e9).round() as i64;
        (r(c.lambda), r(c.location.theta1), r(c.location.theta2))
    };
    points.sort_by_key(key);
}
