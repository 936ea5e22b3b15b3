//! The oriented normal form `(K, ρ, χ)` and the reduction of an arbitrary
//! tensor to it.

use serde::{Deserialize, Serialize};
use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_6, PI};

use crate::error::{Error, Result};
use crate::solver::{find_critical_points, SolverConfig};
use crate::tensor::{tangent_frame, Mat3, OctupolarTensor, Vec3};

/// Cylinder coordinates of an oriented tensor.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OrientedParams {
    pub k: f64,
    pub rho: f64,
    pub chi: f64,
}

impl OrientedParams {
    pub fn new(k: f64, rho: f64, chi: f64) -> Self {
        Self { k, rho, chi }
    }

    pub fn tensor(&self) -> Result<OctupolarTensor> {
        from_cylinder(self.k, self.rho, self.chi)
    }
}

/// Result of [`orient`]: `t.rotated(rotation)` equals `scale` times the
/// oriented tensor of `params`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Orientation {
    pub params: OrientedParams,
    pub rotation: Mat3,
    pub scale: f64,
    /// Whether the orienting maximum is a global maximum.
    pub absolute_max: bool,
}

/// Builds the oriented tensor. Negative `k` is folded to `|k|`, which is the
/// same potential turned by π about the z axis.
pub fn from_cylinder(k: f64, rho: f64, chi: f64) -> Result<OctupolarTensor> {
    if !(0.0..=2.0).contains(&rho) {
        return Err(Error::OutsideCylinder(rho));
    }
    Ok(oriented_tensor(k.abs(), rho, chi))
}

fn oriented_tensor(k: f64, rho: f64, chi: f64) -> OctupolarTensor {
    let (s, c) = chi.sin_cos();
    OctupolarTensor::new(0.5 * rho * c, 0.0, k, 1.0, 0.0, 0.0, -0.5 + 0.5 * rho * s)
}

/// Reads `(K, ρ, χ)` off a tensor assumed to be in oriented form.
pub fn read_params(t: &OctupolarTensor) -> OrientedParams {
    let a = 2.0 * t.alpha0;
    let b = 2.0 * t.beta3 + 1.0;
    let rho = a.hypot(b);
    let chi = if rho == 0.0 { 0.0 } else { b.atan2(a) };
    OrientedParams::new(t.alpha2, rho, chi)
}

/// Rotation about the z axis by `delta`.
pub fn rot_z(delta: f64) -> Mat3 {
    let (s, c) = delta.sin_cos();
    Mat3::new(c, -s, 0.0, s, c, 0.0, 0.0, 0.0, 1.0)
}

/// The tensor of `x -> Φ(m x)`.
pub fn pull(t: &OctupolarTensor, m: &Mat3) -> OctupolarTensor {
    t.rotated(&m.transpose())
}

/// Maps parameters into the fundamental domain `K ≥ 0`, `χ ∈ [−π/2, −π/6]`.
pub fn canonical_form(p: OrientedParams) -> OrientedParams {
    canonical_transform(p).0
}

/// Like [`canonical_form`], also returning `m` with
/// `Φ_canonical(x) = Φ_p(m x)`, where `Φ_p` is the potential of
/// [`from_cylinder`] (which already folds the sign of `K`).
pub fn canonical_transform(p: OrientedParams) -> (OrientedParams, Mat3) {
    let mut m = Mat3::identity();
    let k = p.k.abs();
    if p.rho == 0.0 {
        return (OrientedParams::new(k, 0.0, -FRAC_PI_2), m);
    }
    if k == 0.0 {
        m *= rot_z((-FRAC_PI_2 - p.chi) / 2.0);
        return (OrientedParams::new(0.0, p.rho, -FRAC_PI_2), m);
    }
    let w = 2.0 * PI / 3.0;
    let j = ((p.chi + FRAC_PI_2) / w).floor();
    let mut chi = p.chi - j * w;
    m *= rot_z(j * w);
    if chi > -FRAC_PI_6 {
        m *= Mat3::from_diagonal(&Vec3::new(-1.0, 1.0, 1.0)) * rot_z(-w);
        chi = -FRAC_PI_3 - chi;
    }
    (OrientedParams::new(k, p.rho, chi), m)
}

/// Reduces `t` to oriented normal form.
pub fn orient(t: &OctupolarTensor) -> Result<Orientation> {
    orient_with(t, &SolverConfig::default())
}

pub fn orient_with(t: &OctupolarTensor, cfg: &SolverConfig) -> Result<Orientation> {
    if t.max_abs() < 1e-14 {
        return Err(Error::ZeroTensor);
    }
    let report = find_critical_points(t, cfg, &[])?;
    let top = report
        .points
        .iter()
        .map(|c| c.lambda)
        .fold(f64::NEG_INFINITY, f64::max);
    let tie = 1e-12 * top.abs().max(1.0);
    let best = report
        .points
        .iter()
        .filter(|c| c.is_max_like() && c.lambda >= top - tie)
        .min_by(|a, b| {
            (a.location.theta1, a.location.theta2)
                .partial_cmp(&(b.location.theta1, b.location.theta2))
                .expect("finite angles")
        })
        .ok_or_else(|| Error::NonConvergence("no maximum found".into()))?;
    let mut p = best.cartesian();
    let mut scale = t.potential(&p);
    if scale < 0.0 {
        p = -p;
        scale = -scale;
    }
    let (e1, e2) = tangent_frame(&p);
    let frame = Mat3::from_columns(&[e1, e2, p]);
    let local = pull(t, &frame).scaled(1.0 / scale);
    let a = local.potential(&Vec3::x());
    let b = local.potential(&Vec3::new(FRAC_PI_6.cos(), FRAC_PI_6.sin(), 0.0));
    let (m_eq, flat) = if a.hypot(b) > 1e-10 {
        (rot_z((b.atan2(a) + FRAC_PI_2) / 3.0), false)
    } else {
        (Mat3::identity(), true)
    };
    let m1 = frame * m_eq;
    let mut raw = read_params(&pull(&local, &m_eq));
    if flat {
        raw.k = 0.0;
    }
    if raw.rho < 1e-12 {
        raw.rho = 0.0;
    }
    let (params, m_c) = canonical_transform(raw);
    let m = m1 * m_c;
    let params = OrientedParams::new(params.k, params.rho.min(2.0), params.chi);
    Ok(Orientation {
        params,
        rotation: m.transpose(),
        scale,
        absolute_max: true,
    })
}

/// Sector index helper used by the separatrix tracer.
pub fn in_fundamental_sector(chi: f64) -> bool {
    (-FRAC_PI_2 - 1e-12..=-FRAC_PI_6 + 1e-12).contains(&chi)
}
