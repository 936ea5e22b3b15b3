//! Octupolar tensors: storage, the cubic potential on the unit sphere and its
//! derivatives in angular and Cartesian charts.

use nalgebra::{Matrix2, Matrix3, Vector2, Vector3};
use serde::{Deserialize, Serialize};
use std::f64::consts::FRAC_PI_2;

use crate::error::{Error, Result};

pub type Vec3 = Vector3<f64>;
pub type Mat3 = Matrix3<f64>;
pub type Vec2 = Vector2<f64>;
pub type Mat2 = Matrix2<f64>;

/// Latitude beyond which the Cartesian chart replaces the angular one.
pub const POLE_CHART_MARGIN: f64 = 1e-3;
/// Angular Hessians refuse points this close to a pole.
pub const POLAR_CHART_LIMIT: f64 = 1e-6;
pub const UNIT_TOL: f64 = 1e-10;

/// The seven independent components of a symmetric traceless third-order
/// tensor in three dimensions.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct OctupolarTensor {
    pub alpha0: f64,
    pub alpha1: f64,
    pub alpha2: f64,
    pub alpha3: f64,
    pub beta1: f64,
    pub beta2: f64,
    pub beta3: f64,
}

/// Point of the unit sphere in latitude/longitude form.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SphericalPoint {
    pub theta1: f64,
    pub theta2: f64,
}

/// The materialized 27-entry array `A[i][j][k]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FullTensor(pub [[[f64; 3]; 3]; 3]);

/// Which two-variable chart a Hessian was computed in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Chart {
    Angular,
    North,
    South,
}

impl SphericalPoint {
    pub fn new(theta1: f64, theta2: f64) -> Self {
        Self { theta1, theta2 }
    }

    pub fn north() -> Self {
        Self::new(FRAC_PI_2, 0.0)
    }

    pub fn south() -> Self {
        Self::new(-FRAC_PI_2, 0.0)
    }

    pub fn cartesian(&self) -> Vec3 {
        let (s1, c1) = self.theta1.sin_cos();
        let (s2, c2) = self.theta2.sin_cos();
        Vec3::new(c1 * c2, c1 * s2, s1)
    }

    /// Inverse of [`cartesian`](Self::cartesian); the input is normalized first.
    /// Longitude is set to zero at the poles.
    pub fn from_cartesian(p: &Vec3) -> Self {
        let n = p.norm();
        let (x, y, z) = (p.x / n, p.y / n, p.z / n);
        let r = x.hypot(y);
        let theta2 = if r < 1e-15 { 0.0 } else { y.atan2(x) };
        Self::new(z.atan2(r), theta2)
    }

    /// Great-circle distance.
    pub fn distance(&self, other: &SphericalPoint) -> f64 {
        sphere_distance(&self.cartesian(), &other.cartesian())
    }

    pub fn antipode(&self) -> Self {
        Self::from_cartesian(&(-self.cartesian()))
    }

    pub fn near_pole(&self) -> bool {
        self.theta1.abs() > FRAC_PI_2 - POLE_CHART_MARGIN
    }
}

/// Angle between two unit vectors, accurate for nearly coincident inputs.
pub fn sphere_distance(a: &Vec3, b: &Vec3) -> f64 {
    let c = a.cross(b).norm();
    let d = a.dot(b);
    c.atan2(d)
}

/// Orthonormal basis of the tangent plane at the unit vector `p`.
pub fn tangent_frame(p: &Vec3) -> (Vec3, Vec3) {
    let a = if p.x.abs() <= p.y.abs() && p.x.abs() <= p.z.abs() {
        Vec3::x()
    } else if p.y.abs() <= p.z.abs() {
        Vec3::y()
    } else {
        Vec3::z()
    };
    let e1 = (a - p * a.dot(p)).normalize();
    let e2 = p.cross(&e1);
    (e1, e2)
}

/// Ascending eigenvalues of a symmetric 2x2 matrix.
pub fn sym2_eigenvalues(h: &Mat2) -> [f64; 2] {
    let m = 0.5 * (h[(0, 0)] + h[(1, 1)]);
    let d = 0.5 * (h[(0, 0)] - h[(1, 1)]);
    let off = 0.5 * (h[(0, 1)] + h[(1, 0)]);
    let r = d.hypot(off);
    [m - r, m + r]
}

/// Unit eigenvector belonging to the smaller eigenvalue of a symmetric 2x2 matrix.
pub fn sym2_soft_vector(h: &Mat2) -> Vec2 {
    let a = h[(0, 0)];
    let b = 0.5 * (h[(0, 1)] + h[(1, 0)]);
    let c = h[(1, 1)];
    let phi = 0.5 * (2.0 * b).atan2(a - c);
    // (cos phi, sin phi) is the eigenvector of the larger eigenvalue
    Vec2::new(-phi.sin(), phi.cos())
}

impl OctupolarTensor {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        alpha0: f64,
        alpha1: f64,
        alpha2: f64,
        alpha3: f64,
        beta1: f64,
        beta2: f64,
        beta3: f64,
    ) -> Self {
        Self {
            alpha0,
            alpha1,
            alpha2,
            alpha3,
            beta1,
            beta2,
            beta3,
        }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    /// Components in the order (α0, α1, α2, α3, β1, β2, β3).
    pub fn from_array(a: [f64; 7]) -> Self {
        Self::new(a[0], a[1], a[2], a[3], a[4], a[5], a[6])
    }

    pub fn to_array(&self) -> [f64; 7] {
        [
            self.alpha0,
            self.alpha1,
            self.alpha2,
            self.alpha3,
            self.beta1,
            self.beta2,
            self.beta3,
        ]
    }

    pub fn max_abs(&self) -> f64 {
        self.to_array().iter().fold(0.0_f64, |m, v| m.max(v.abs()))
    }

    pub fn full(&self) -> FullTensor {
        assemble_full(self)
    }

    /// Closed polynomial form of the potential.
    pub fn potential(&self, p: &Vec3) -> f64 {
        let (x, y, z) = (p.x, p.y, p.z);
        6.0 * self.alpha0 * x * y * z
            + self.alpha1 * x * (x * x - 3.0 * z * z)
            + self.alpha2 * y * (y * y - 3.0 * x * x)
            + self.alpha3 * z * (z * z - 3.0 * y * y)
            + 3.0
                * (self.beta1 * x * (y * y - z * z)
                    + self.beta2 * y * (z * z - x * x)
                    + self.beta3 * z * (x * x - y * y))
    }

    pub fn spherical_potential(&self, sp: &SphericalPoint) -> f64 {
        self.potential(&sp.cartesian())
    }

    pub fn spherical_gradient(&self, sp: &SphericalPoint) -> Vec2 {
        self.full().spherical_gradient(sp)
    }

    pub fn spherical_hessian(&self, sp: &SphericalPoint) -> Result<Mat2> {
        self.full().spherical_hessian(sp)
    }

    pub fn eigen_residual(&self, p: &Vec3, lambda: f64) -> Result<Vec3> {
        self.full().eigen_residual(p, lambda)
    }

    /// Returns the tensor of `x -> Φ(qᵀx)`.
    pub fn rotated(&self, q: &Mat3) -> Self {
        self.full().rotated(q).params()
    }

    pub fn scaled(&self, s: f64) -> Self {
        Self::from_array(self.to_array().map(|v| v * s))
    }
}

/// Builds the symmetric traceless array from the seven components.
pub fn assemble_full(t: &OctupolarTensor) -> FullTensor {
    let mut a = [[[0.0; 3]; 3]; 3];
    let mut set = |i: usize, j: usize, k: usize, v: f64| {
        for (p, q, r) in [
            (i, j, k),
            (i, k, j),
            (j, i, k),
            (j, k, i),
            (k, i, j),
            (k, j, i),
        ] {
            a[p][q][r] = v;
        }
    };
    set(0, 1, 2, t.alpha0);
    set(0, 0, 0, t.alpha1);
    set(1, 1, 1, t.alpha2);
    set(2, 2, 2, t.alpha3);
    set(0, 1, 1, t.beta1);
    set(1, 2, 2, t.beta2);
    set(2, 0, 0, t.beta3);
    set(0, 2, 2, -(t.alpha1 + t.beta1));
    set(1, 0, 0, -(t.alpha2 + t.beta2));
    set(2, 1, 1, -(t.alpha3 + t.beta3));
    FullTensor(a)
}

impl FullTensor {
    pub fn entry(&self, i: usize, j: usize, k: usize) -> f64 {
        self.0[i][j][k]
    }

    /// Recovers the seven components; exact for symmetric traceless arrays.
    pub fn params(&self) -> OctupolarTensor {
        let a = &self.0;
        OctupolarTensor::new(
            a[0][1][2], a[0][0][0], a[1][1][1], a[2][2][2], a[0][1][1], a[1][2][2], a[2][0][0],
        )
    }

    /// `Σ_i A[i][i][k]` for each k.
    pub fn partial_traces(&self) -> [f64; 3] {
        let mut t = [0.0; 3];
        for (k, tk) in t.iter_mut().enumerate() {
            *tk = (0..3).map(|i| self.0[i][i][k]).sum();
        }
        t
    }

    pub fn potential(&self, p: &Vec3) -> f64 {
        p.dot(&self.contract2(p))
    }

    /// `Â(p,p)_i = A_ijk p_j p_k`.
    pub fn contract2(&self, p: &Vec3) -> Vec3 {
        let mut out = Vec3::zeros();
        for i in 0..3 {
            let m = &self.0[i];
            let mut s = 0.0;
            for j in 0..3 {
                s += p[j] * (m[j][0] * p[0] + m[j][1] * p[1] + m[j][2] * p[2]);
            }
            out[i] = s;
        }
        out
    }

    /// `A(p)_ij = A_ijk p_k`.
    pub fn contract1(&self, p: &Vec3) -> Mat3 {
        let mut out = Mat3::zeros();
        for i in 0..3 {
            for j in 0..3 {
                let v = &self.0[i][j];
                out[(i, j)] = v[0] * p[0] + v[1] * p[1] + v[2] * p[2];
            }
        }
        out
    }

    pub fn gradient(&self, p: &Vec3) -> Vec3 {
        3.0 * self.contract2(p)
    }

    pub fn hessian(&self, p: &Vec3) -> Mat3 {
        6.0 * self.contract1(p)
    }

    pub fn rotated(&self, q: &Mat3) -> FullTensor {
        let mut out = [[[0.0; 3]; 3]; 3];
        let a = &self.0;
        for (i, oi) in out.iter_mut().enumerate() {
            for (j, oij) in oi.iter_mut().enumerate() {
                for (k, oijk) in oij.iter_mut().enumerate() {
                    let mut s = 0.0;
                    for (ia, aa) in a.iter().enumerate() {
                        for (ib, ab) in aa.iter().enumerate() {
                            let qq = q[(i, ia)] * q[(j, ib)];
                            for (ic, v) in ab.iter().enumerate() {
                                s += qq * q[(k, ic)] * v;
                            }
                        }
                    }
                    *oijk = s;
                }
            }
        }
        FullTensor(out)
    }

    pub fn eigen_residual(&self, p: &Vec3, lambda: f64) -> Result<Vec3> {
        let n = p.norm();
        if (n - 1.0).abs() > UNIT_TOL {
            return Err(Error::NotUnitVector(n));
        }
        Ok(self.contract2(p) - lambda * p)
    }

    /// Tangential part of the gradient at the unit vector `p`.
    pub fn riemannian_gradient(&self, p: &Vec3) -> Vec3 {
        let g = self.gradient(p);
        g - p * p.dot(&g)
    }

    pub fn spherical_gradient(&self, sp: &SphericalPoint) -> Vec2 {
        let (s1, c1) = sp.theta1.sin_cos();
        let (s2, c2) = sp.theta2.sin_cos();
        let g = self.gradient(&sp.cartesian());
        let p1 = Vec3::new(-s1 * c2, -s1 * s2, c1);
        let p2 = Vec3::new(-c1 * s2, c1 * c2, 0.0);
        Vec2::new(g.dot(&p1), g.dot(&p2))
    }

    pub fn spherical_hessian(&self, sp: &SphericalPoint) -> Result<Mat2> {
        if sp.theta1.abs() > FRAC_PI_2 - POLAR_CHART_LIMIT {
            return Err(Error::PolarChart(sp.theta1));
        }
        Ok(self.angular_hessian_unchecked(sp))
    }

    fn angular_hessian_unchecked(&self, sp: &SphericalPoint) -> Mat2 {
        let (s1, c1) = sp.theta1.sin_cos();
        let (s2, c2) = sp.theta2.sin_cos();
        let p = sp.cartesian();
        let g = self.gradient(&p);
        let h = self.hessian(&p);
        let p1 = Vec3::new(-s1 * c2, -s1 * s2, c1);
        let p2 = Vec3::new(-c1 * s2, c1 * c2, 0.0);
        let p12 = Vec3::new(s1 * s2, -s1 * c2, 0.0);
        let p22 = Vec3::new(-c1 * c2, -c1 * s2, 0.0);
        let h11 = p1.dot(&(h * p1)) - g.dot(&p);
        let h12 = p1.dot(&(h * p2)) + g.dot(&p12);
        let h22 = p2.dot(&(h * p2)) + g.dot(&p22);
        Mat2::new(h11, h12, h12, h22)
    }

    /// Hessian of `(x, y) -> Φ(x, y, ±√(1 - x² - y²))` at the point `p`
    /// (sign taken from `p.z`).
    pub fn cartesian_chart_hessian(&self, p: &Vec3) -> Mat2 {
        let sigma = if p.z >= 0.0 { 1.0 } else { -1.0 };
        let (x, y) = (p.x, p.y);
        let w = (1.0 - x * x - y * y).max(0.0).sqrt();
        let q = Vec3::new(x, y, sigma * w);
        let g = self.gradient(&q);
        let h = self.hessian(&q);
        let px = Vec3::new(1.0, 0.0, -sigma * x / w);
        let py = Vec3::new(0.0, 1.0, -sigma * y / w);
        let w3 = w * w * w;
        let gz = g.z * -sigma / w3;
        let hxx = px.dot(&(h * px)) + gz * (1.0 - y * y);
        let hxy = px.dot(&(h * py)) + gz * x * y;
        let hyy = py.dot(&(h * py)) + gz * (1.0 - x * x);
        Mat2::new(hxx, hxy, hxy, hyy)
    }

    /// Coordinate Hessian in the chart appropriate for the point.
    pub fn chart_hessian(&self, p: &Vec3) -> (Mat2, Chart) {
        let sp = SphericalPoint::from_cartesian(p);
        if sp.near_pole() {
            let chart = if p.z > 0.0 {
                Chart::North
            } else {
                Chart::South
            };
            (self.cartesian_chart_hessian(&(p / p.norm())), chart)
        } else {
            (self.angular_hessian_unchecked(&sp), Chart::Angular)
        }
    }

    /// Riemannian Hessian of the restriction to the sphere, expressed in
    /// the frame `(e1, e2)`.
    pub fn riemannian_hessian(&self, p: &Vec3, e1: &Vec3, e2: &Vec3) -> Mat2 {
        let lambda3 = p.dot(&self.gradient(p));
        let h = self.hessian(p);
        let he1 = h * e1;
        let he2 = h * e2;
        let a = e1.dot(&he1) - lambda3;
        let b = e1.dot(&he2);
        let c = e2.dot(&he2) - lambda3;
        Mat2::new(a, b, b, c)
    }
}
