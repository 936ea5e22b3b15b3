#![allow(dead_code)]

use octupolar::tensor::{Mat3, Vec3};
use octupolar::{OctupolarTensor, SphericalPoint};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn tensor_strategy() -> impl Strategy<Value = OctupolarTensor> {
    prop::array::uniform7(-2.0f64..2.0).prop_map(OctupolarTensor::from_array)
}

pub fn unit_strategy() -> impl Strategy<Value = Vec3> {
    (-1.0f64..1.0, -std::f64::consts::PI..std::f64::consts::PI).prop_map(|(z, phi)| {
        let r = (1.0 - z * z).sqrt();
        Vec3::new(r * phi.cos(), r * phi.sin(), z)
    })
}

pub fn interior_point_strategy() -> impl Strategy<Value = SphericalPoint> {
    (-1.4f64..1.4, -3.1f64..3.1).prop_map(|(a, b)| SphericalPoint::new(a, b))
}

/// Haar-distributed rotation from a random unit quaternion.
pub fn random_rotation<R: Rng>(r: &mut R) -> Mat3 {
    loop {
        let q: [f64; 4] = [
            r.random_range(-1.0..1.0),
            r.random_range(-1.0..1.0),
            r.random_range(-1.0..1.0),
            r.random_range(-1.0..1.0),
        ];
        let n = q.iter().map(|v| v * v).sum::<f64>().sqrt();
        if n > 0.1 && n <= 1.0 {
            let [w, x, y, z] = q.map(|v| v / n);
            return Mat3::new(
                1.0 - 2.0 * (y * y + z * z),
                2.0 * (x * y - w * z),
                2.0 * (x * z + w * y),
                2.0 * (x * y + w * z),
                1.0 - 2.0 * (x * x + z * z),
                2.0 * (y * z - w * x),
                2.0 * (x * z - w * y),
                2.0 * (y * z + w * x),
                1.0 - 2.0 * (x * x + y * y),
            );
        }
    }
}

/// Uniform sample of the cylinder `0 ≤ K ≤ k_max`, `0 ≤ ρ ≤ 2`, any χ.
pub fn random_cylinder<R: Rng>(r: &mut R, k_max: f64) -> (f64, f64, f64) {
    (
        r.random_range(0.0..k_max),
        2.0 * r.random_range(0.0f64..1.0).sqrt(),
        r.random_range(-std::f64::consts::PI..std::f64::consts::PI),
    )
}

/// Triple loop over the 27 entries.
pub fn brute_potential(t: &OctupolarTensor, p: &Vec3) -> f64 {
    let a = t.full();
    let mut s = 0.0;
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                s += a.entry(i, j, k) * p[i] * p[j] * p[k];
            }
        }
    }
    s
}

pub fn psi(t: &OctupolarTensor, a: f64, b: f64) -> f64 {
    t.spherical_potential(&SphericalPoint::new(a, b))
}

pub fn fd_gradient(t: &OctupolarTensor, sp: &SphericalPoint, h: f64) -> [f64; 2] {
    let (a, b) = (sp.theta1, sp.theta2);
    [
        (psi(t, a + h, b) - psi(t, a - h, b)) / (2.0 * h),
        (psi(t, a, b + h) - psi(t, a, b - h)) / (2.0 * h),
    ]
}

pub fn fd_hessian(t: &OctupolarTensor, sp: &SphericalPoint, h: f64) -> [[f64; 2]; 2] {
    let (a, b) = (sp.theta1, sp.theta2);
    let f0 = psi(t, a, b);
    let faa = (psi(t, a + h, b) - 2.0 * f0 + psi(t, a - h, b)) / (h * h);
    let fbb = (psi(t, a, b + h) - 2.0 * f0 + psi(t, a, b - h)) / (h * h);
    let fab = (psi(t, a + h, b + h) - psi(t, a + h, b - h) - psi(t, a - h, b + h)
        + psi(t, a - h, b - h))
        / (4.0 * h * h);
    [[faa, fab], [fab, fbb]]
}

pub fn angle_diff(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(2.0 * std::f64::consts::PI);
    d.min(2.0 * std::f64::consts::PI - d)
}

/// Largest distance from a point of `a` to the nearest point of `b`, with
/// `None` when the sizes differ.
pub fn set_distance(a: &[octupolar::CriticalPoint], b: &[octupolar::CriticalPoint]) -> Option<f64> {
    if a.len() != b.len() {
        return None;
    }
    let one_way = |x: &[octupolar::CriticalPoint], y: &[octupolar::CriticalPoint]| {
        x.iter()
            .map(|p| {
                y.iter()
                    .map(|q| p.location.distance(&q.location))
                    .fold(f64::INFINITY, f64::min)
            })
            .fold(0.0, f64::max)
    };
    Some(one_way(a, b).max(one_way(b, a)))
}

/// Largest `|λ − Ψ|` and tangential gradient over a list.
pub fn worst_residuals(t: &OctupolarTensor, pts: &[octupolar::CriticalPoint]) -> (f64, f64) {
    let full = t.full();
    pts.iter().fold((0.0, 0.0), |(l, g), c| {
        let p = c.cartesian();
        let lam = (c.lambda - t.potential(&p)).abs();
        let eig = full
            .eigen_residual(&p, c.lambda)
            .map(|r| r.norm())
            .unwrap_or(f64::INFINITY);
        (l.max(lam), g.max(eig))
    })
}
