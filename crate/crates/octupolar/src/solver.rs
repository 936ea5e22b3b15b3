//! Multi-start Riemannian Newton search for all critical points of the
//! potential on the sphere.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::f64::consts::PI;

use crate::critical::{
    classify_point, sort_points, ClassifyOptions, CriticalCircle, CriticalPoint,
};
use crate::error::{Error, Result};
use crate::orientation::{from_cylinder, OrientedParams};
use crate::strata::{
    classify_stratum, d2h_spectrum, d3h_spectrum, reflection_plane_spectrum, StratumLabel,
};
use crate::tensor::{
    sphere_distance, tangent_frame, FullTensor, Mat2, OctupolarTensor, SphericalPoint, Vec2, Vec3,
};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SolverConfig {
    pub grid_lat: usize,
    pub grid_lon: usize,
    pub max_iters: usize,
    /// Convergence threshold on the tangential gradient, relative to the
    /// largest tensor component.
    pub tol: f64,
    pub merge_tol: f64,
    pub degeneracy_tol: f64,
    pub index_radius: f64,
    pub index_samples: usize,
    pub strata_seeds: bool,
    pub soft_seeds: bool,
    pub parallel: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            grid_lat: 64,
            grid_lon: 128,
            max_iters: 40,
            tol: 1e-12,
            merge_tol: 1e-6,
            degeneracy_tol: 1e-8,
            index_radius: 1e-3,
            index_samples: 32,
            strata_seeds: true,
            soft_seeds: true,
            parallel: true,
        }
    }
}

impl SolverConfig {
    fn classify_options(&self) -> ClassifyOptions {
        ClassifyOptions {
            degeneracy_tol: self.degeneracy_tol,
            index_samples: self.index_samples,
            index_radius: self.index_radius,
        }
    }
}

/// Critical set of an arbitrary tensor.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CriticalSet {
    pub points: Vec<CriticalPoint>,
    pub circles: Vec<CriticalCircle>,
    pub seeds: usize,
    pub failures: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Phase {
    B3,
    B4,
    S1,
    S2,
    L1,
    L2,
    Center,
    Disk,
    Axis,
    Tetrahedral,
    Unresolved,
}

impl Phase {
    pub fn label(&self) -> &'static str {
        match self {
            Phase::B3 => "B3",
            Phase::B4 => "B4",
            Phase::S1 => "S1",
            Phase::S2 => "S2",
            Phase::L1 => "L1",
            Phase::L2 => "L2",
            Phase::Center => "center C",
            Phase::Disk => "disk D",
            Phase::Axis => "axis A",
            Phase::Tetrahedral => "tetrahedral T",
            Phase::Unresolved => "unresolved",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumReport {
    pub params: OrientedParams,
    pub points: Vec<CriticalPoint>,
    pub circles: Vec<CriticalCircle>,
    pub n_max: usize,
    pub n_min: usize,
    pub n_saddle: usize,
    pub index_sum: i32,
    pub phase: Phase,
    pub stratum: StratumLabel,
    pub absolute_max_at_pole: bool,
    pub seeds: usize,
    pub failures: usize,
}

impl SpectrumReport {
    pub fn count(&self) -> usize {
        self.points.len()
    }

    /// Secondary maxima above the orienting one.
    pub fn variant_minus(&self) -> bool {
        !self.absolute_max_at_pole
    }

    pub fn pattern(&self) -> IndexPattern {
        IndexPattern::of(&self.points)
    }
}

/// Half-counts of extrema and saddles by index, in the layout of the
/// Poincaré–Hopf combination tables.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexPattern {
    pub m: usize,
    pub s1: usize,
    pub s2: usize,
    pub s3: usize,
    pub removable: usize,
    pub other: BTreeMap<i32, usize>,
}

impl IndexPattern {
    pub fn of(points: &[CriticalPoint]) -> Self {
        let mut by_index: BTreeMap<i32, usize> = BTreeMap::new();
        for c in points {
            *by_index.entry(c.index).or_default() += 1;
        }
        let take = |m: &mut BTreeMap<i32, usize>, i: i32| m.remove(&i).unwrap_or(0);
        let extrema = take(&mut by_index, 1);
        let s1 = take(&mut by_index, -1);
        let s2 = take(&mut by_index, -2);
        let s3 = take(&mut by_index, -3);
        let removable = take(&mut by_index, 0);
        Self {
            m: extrema / 2,
            s1: s1 / 2,
            s2: s2 / 2,
            s3: s3 / 2,
            removable,
            other: by_index,
        }
    }

    /// Whether the pattern is one of the realized rows, allowing any number
    /// of index-zero points.
    pub fn realized(&self) -> bool {
        self.other.is_empty()
            && matches!(
                (self.m, self.s1, self.s2, self.s3),
                (3, 2, 0, 0) | (3, 0, 1, 0) | (4, 3, 0, 0) | (4, 0, 0, 1)
            )
    }

    pub fn row_name(&self) -> Option<&'static str> {
        if !self.other.is_empty() {
            return None;
        }
        match (self.m, self.s1, self.s2, self.s3) {
            (1, 0, 0, 0) => Some("a"),
            (2, 1, 0, 0) => Some("b"),
            (3, 2, 0, 0) => Some("c1"),
            (3, 0, 1, 0) => Some("c2"),
            (4, 3, 0, 0) => Some("d1"),
            (4, 1, 1, 0) => Some("d2"),
            (4, 0, 0, 1) => Some("d3"),
            _ => None,
        }
    }
}

struct Newton {
    p: Vec3,
    grad: f64,
    sigma: f64,
    converged: bool,
}

fn solve_sym2(h: &Mat2, r: &Vec2, floor: f64) -> Vec2 {
    let a = h[(0, 0)];
    let b = h[(0, 1)];
    let c = h[(1, 1)];
    let phi = 0.5 * (2.0 * b).atan2(a - c);
    let (s, co) = phi.sin_cos();
    let u1 = Vec2::new(co, s);
    let u2 = Vec2::new(-s, co);
    let l1 = a * co * co + 2.0 * b * co * s + c * s * s;
    let l2 = a * s * s - 2.0 * b * co * s + c * co * co;
    let inv = |l: f64| {
        if l.abs() < floor {
            floor.copysign(l)
        } else {
            l
        }
    };
    u1 * (r.dot(&u1) / inv(l1)) + u2 * (r.dot(&u2) / inv(l2))
}

fn sigma_min(full: &FullTensor, p: &Vec3) -> (f64, Vec3) {
    let (e1, e2) = tangent_frame(p);
    let h = full.riemannian_hessian(p, &e1, &e2);
    let eig = crate::tensor::sym2_eigenvalues(&h);
    let v = crate::tensor::sym2_soft_vector(&h);
    let s = if eig[0].abs() <= eig[1].abs() {
        eig[0]
    } else {
        eig[1]
    };
    let dir = if eig[0].abs() <= eig[1].abs() {
        v
    } else {
        Vec2::new(-v.y, v.x)
    };
    (s, (dir.x * e1 + dir.y * e2).normalize())
}

/// Newton step from `q` restricted to the stiffer Hessian eigendirection,
/// which pulls a point back into a curved valley of `|∇Ψ|`.
fn stiff_correction(full: &FullTensor, q: &Vec3, gq: &Vec3) -> Vec3 {
    let (e1, e2) = tangent_frame(q);
    let h = full.riemannian_hessian(q, &e1, &e2);
    let eig = crate::tensor::sym2_eigenvalues(&h);
    let low = crate::tensor::sym2_soft_vector(&h);
    let (stiff_l, stiff_v) = if eig[0].abs() <= eig[1].abs() {
        (eig[1], Vec2::new(-low.y, low.x))
    } else {
        (eig[0], low)
    };
    if stiff_l.abs() < 1e-300 {
        return *q;
    }
    let dir = (stiff_v.x * e1 + stiff_v.y * e2).normalize();
    let step = -gq.dot(&dir) / stiff_l;
    (q + step.clamp(-0.5, 0.5) * dir).normalize()
}

fn newton(full: &FullTensor, p0: &Vec3, cfg: &SolverConfig, scale: f64) -> Newton {
    let tol = cfg.tol * scale;
    let mut p = p0.normalize();
    let mut g = full.riemannian_gradient(&p);
    let mut gn = g.norm();
    let mut limit = cfg.max_iters;
    let mut extended = false;
    let mut it = 0;
    let mut converged = gn < tol;
    while !converged {
        if it >= limit {
            if !extended && gn < 1e-6 * scale {
                limit += cfg.max_iters;
                extended = true;
            } else {
                break;
            }
        }
        it += 1;
        let (e1, e2) = tangent_frame(&p);
        let h = full.riemannian_hessian(&p, &e1, &e2);
        let r = Vec2::new(g.dot(&e1), g.dot(&e2));
        let d = -solve_sym2(&h, &r, 1e-14 * scale);
        let mut v = d.x * e1 + d.y * e2;
        let vn = v.norm();
        if vn > 0.5 {
            v *= 0.5 / vn;
        }
        let mut alpha = 1.0;
        let mut accepted = false;
        for _ in 0..40 {
            let q = (p + alpha * v).normalize();
            let gq = full.riemannian_gradient(&q);
            if gq.norm() < gn {
                p = q;
                g = gq;
                gn = g.norm();
                accepted = true;
                break;
            }
            let qc = stiff_correction(full, &q, &gq);
            let gc = full.riemannian_gradient(&qc);
            if gc.norm() < gn {
                p = qc;
                g = gc;
                gn = g.norm();
                accepted = true;
                break;
            }
            alpha *= 0.5;
        }
        if !accepted {
            break;
        }
        converged = gn < tol;
    }
    let (sigma, _) = sigma_min(full, &p);
    Newton {
        p,
        grad: gn,
        sigma,
        converged,
    }
}

#[derive(Clone, Copy)]
struct Candidate {
    p: Vec3,
    grad: f64,
    sigma: f64,
}

impl Candidate {
    fn err(&self) -> f64 {
        if self.sigma.abs() < 1e-300 {
            1e-3
        } else {
            (self.grad / self.sigma.abs()).min(1e-3)
        }
    }
}

fn grid_seeds(cfg: &SolverConfig) -> Vec<Vec3> {
    let mut seeds = Vec::with_capacity(cfg.grid_lat * cfg.grid_lon + 2);
    seeds.push(Vec3::z());
    seeds.push(-Vec3::z());
    for i in 0..cfg.grid_lat {
        let t1 = -PI / 2.0 + (i as f64 + 0.5) * PI / cfg.grid_lat as f64;
        for j in 0..cfg.grid_lon {
            let t2 = -PI + (j as f64 + 0.5) * 2.0 * PI / cfg.grid_lon as f64;
            seeds.push(SphericalPoint::new(t1, t2).cartesian());
        }
    }
    seeds
}

fn run_seeds(full: &FullTensor, seeds: &[Vec3], cfg: &SolverConfig, scale: f64) -> Vec<Newton> {
    if cfg.parallel {
        seeds
            .par_iter()
            .map(|s| newton(full, s, cfg, scale))
            .collect()
    } else {
        seeds.iter().map(|s| newton(full, s, cfg, scale)).collect()
    }
}

fn merge(mut cands: Vec<Candidate>, cfg: &SolverConfig) -> Vec<Candidate> {
    cands.sort_by(|a, b| {
        a.grad
            .partial_cmp(&b.grad)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then_with(|| {
                lex(&a.p)
                    .partial_cmp(&lex(&b.p))
                    .unwrap_or(std::cmp::Ordering::Equal)
            })
    });
    let mut out: Vec<Candidate> = Vec::new();
    for c in cands {
        let dup = out
            .iter()
            .any(|a| sphere_distance(&a.p, &c.p) < cfg.merge_tol.max(3.0 * (a.err() + c.err())));
        if !dup {
            out.push(c);
        }
    }
    out
}

fn lex(p: &Vec3) -> (f64, f64, f64) {
    (p.x, p.y, p.z)
}

/// Seeds along the soft direction of a nearly degenerate point, where a
/// nearby partner is expected.
fn soft_seeds(full: &FullTensor, p: &Vec3) -> Vec<Vec3> {
    let (sigma, v) = sigma_min(full, p);
    let f = |t: f64| full.potential(&(p * t.cos() + v * t.sin()));
    let h = 1e-3;
    let c = (f(2.0 * h) - 2.0 * f(h) + 2.0 * f(-h) - f(-2.0 * h)) / (2.0 * h * h * h);
    let mut ts = Vec::new();
    if c.abs() > 1e-12 {
        let t = -2.0 * sigma / c;
        if t.abs() < 0.5 {
            ts.push(t);
        }
    }
    for k in 0..9 {
        let d = 1e-4 * f64::from(1 << k);
        ts.push(d);
        ts.push(-d);
    }
    ts.into_iter()
        .map(|t| (p * t.cos() + v * t.sin()).normalize())
        .collect()
}

/// Newton steps on the great circle through `x` towards `n`.
fn polish_across(full: &FullTensor, x: &Vec3, n: &Vec3) -> Vec3 {
    let mut x = x.normalize();
    for _ in 0..6 {
        let t = n - n.dot(&x) * x;
        if t.norm() < 1e-12 {
            break;
        }
        let t = t.normalize();
        let g = full.riemannian_gradient(&x).dot(&t);
        let h = full.riemannian_hessian(&x, &t, &x.cross(&t))[(0, 0)];
        if h.abs() < 1e-12 {
            break;
        }
        let s = -g / h;
        x = (x * s.cos() + t * s.sin()).normalize();
        if s.abs() < 1e-16 {
            break;
        }
    }
    x
}

/// Detects whether the degenerate point `c` lies on a circle of critical
/// points; returns the circle plane `(n, offset)`.
fn detect_circle(
    full: &FullTensor,
    c: &Candidate,
    cfg: &SolverConfig,
    scale: f64,
) -> Option<(Vec3, f64)> {
    let (_, v) = sigma_min(full, &c.p);
    let q1 = newton(full, &(c.p + 0.05 * v), cfg, scale);
    let q2 = newton(full, &(c.p - 0.05 * v), cfg, scale);
    if !(q1.converged && q2.converged) {
        return None;
    }
    if sphere_distance(&q1.p, &c.p) < 1e-3 || sphere_distance(&q2.p, &c.p) < 1e-3 {
        return None;
    }
    let n = (q1.p - c.p).cross(&(q2.p - c.p));
    if n.norm() < 1e-12 {
        return None;
    }
    let mut n = n.normalize();
    let mut anchor = c.p;
    for _ in 0..2 {
        let off = n.dot(&anchor);
        let u = (anchor - off * n).normalize();
        let w = n.cross(&u);
        let rad = (1.0 - off * off).max(0.0).sqrt();
        let ring: Vec<Vec3> = (0..3)
            .map(|i| {
                let phi = 2.0 * PI * i as f64 / 3.0;
                polish_across(full, &(off * n + rad * (phi.cos() * u + phi.sin() * w)), &n)
            })
            .collect();
        let m = (ring[1] - ring[0]).cross(&(ring[2] - ring[0]));
        if m.norm() < 1e-12 {
            break;
        }
        n = m.normalize() * m.dot(&n).signum();
        anchor = ring[0];
    }
    if n.z < 0.0 || (n.z == 0.0 && (n.y < 0.0 || (n.y == 0.0 && n.x < 0.0))) {
        n = -n;
    }
    let off = n.dot(&anchor);
    let u = (anchor - off * n).normalize();
    let w = n.cross(&u);
    let rad = (1.0 - off * off).max(0.0).sqrt();
    let on = (0..24).all(|i| {
        let phi = 2.0 * PI * i as f64 / 24.0;
        let x = off * n + rad * (phi.cos() * u + phi.sin() * w);
        full.riemannian_gradient(&x).norm() < 1e-9 * scale
    });
    on.then_some((n, off))
}

/// Finds and classifies every critical point of `t`.
pub fn find_critical_points(
    t: &OctupolarTensor,
    cfg: &SolverConfig,
    extra: &[Vec3],
) -> Result<CriticalSet> {
    let scale = t.max_abs();
    if scale < 1e-14 {
        return Err(Error::ZeroTensor);
    }
    let full = t.full();
    let grid = grid_seeds(cfg);
    let n_grid = grid.len();
    let mut seeds = grid;
    seeds.extend_from_slice(extra);
    let results = run_seeds(&full, &seeds, cfg, scale);
    let failures = results[..n_grid].iter().filter(|r| !r.converged).count();

    let mut cands: Vec<Candidate> = Vec::new();
    let mut ghosts: Vec<Vec3> = Vec::new();
    for r in &results {
        if r.converged {
            cands.push(Candidate {
                p: r.p,
                grad: r.grad,
                sigma: r.sigma,
            });
            cands.push(Candidate {
                p: -r.p,
                grad: r.grad,
                sigma: r.sigma,
            });
        } else if r.grad < 1e-3 * scale {
            ghosts.push(r.p);
        }
    }
    let mut accepted = merge(cands, cfg);

    if cfg.soft_seeds {
        ghosts.sort_by(|a, b| {
            lex(a)
                .partial_cmp(&lex(b))
                .unwrap_or(std::cmp::Ordering::Equal)
        });
        ghosts.dedup_by(|a, b| sphere_distance(a, b) < 1e-4);
        let mut pending: Vec<Vec3> = ghosts;
        for _round in 0..2 {
            for c in &accepted {
                if c.sigma.abs() < 0.05 * scale {
                    pending.push(c.p);
                }
            }
            if pending.is_empty() {
                break;
            }
            let extra_seeds: Vec<Vec3> =
                pending.iter().flat_map(|p| soft_seeds(&full, p)).collect();
            pending.clear();
            let more = run_seeds(&full, &extra_seeds, cfg, scale);
            let mut cands = accepted.clone();
            for r in more.iter().filter(|r| r.converged) {
                cands.push(Candidate {
                    p: r.p,
                    grad: r.grad,
                    sigma: r.sigma,
                });
                cands.push(Candidate {
                    p: -r.p,
                    grad: r.grad,
                    sigma: r.sigma,
                });
            }
            let merged = merge(cands, cfg);
            let grew = merged.len() != accepted.len();
            accepted = merged;
            if !grew {
                break;
            }
        }
    }

    let mut circles: Vec<CriticalCircle> = Vec::new();
    let mut planes: Vec<(Vec3, f64)> = Vec::new();
    for c in &accepted {
        if c.sigma.abs() > 1e-6 * scale {
            continue;
        }
        let known = planes
            .iter()
            .any(|(n, off)| (n.dot(&c.p) - off).abs() < 1e-6);
        if known {
            continue;
        }
        if let Some((n, off)) = detect_circle(&full, c, cfg, scale) {
            let at = polish_across(&full, &c.p, &n);
            let (h, _) = full.chart_hessian(&at);
            let eigs = crate::tensor::sym2_eigenvalues(&h);
            let value = full.potential(&at);
            circles.push(CriticalCircle {
                latitude: off.clamp(-1.0, 1.0).asin(),
                value,
                multiplier: 3.0 * value,
                hessian_eigs: eigs,
            });
            planes.push((n, off));
        }
    }
    if !planes.is_empty() {
        accepted.retain(|c| {
            !planes
                .iter()
                .any(|(n, off)| (n.dot(&c.p) - off).abs() < 1e-5)
        });
    }
    circles.sort_by(|a, b| {
        a.latitude
            .partial_cmp(&b.latitude)
            .unwrap_or(std::cmp::Ordering::Equal)
    });

    if accepted.is_empty() && circles.is_empty() {
        return Err(Error::NonConvergence("no critical point found".into()));
    }
    if 2 * failures > n_grid {
        return Err(Error::NonConvergence(format!(
            "{failures} of {n_grid} seeds failed"
        )));
    }

    let opts = cfg.classify_options();
    let mut points: Vec<CriticalPoint> = accepted
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let nn = accepted
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, q)| sphere_distance(&c.p, &q.p))
                .fold(PI, f64::min);
            classify_point(&full, &c.p, nn, c.err(), &opts)
        })
        .collect();
    sort_points(&mut points);
    Ok(CriticalSet {
        points,
        circles,
        seeds: seeds.len(),
        failures,
    })
}

fn stratum_seeds(p: &OrientedParams) -> Vec<Vec3> {
    let mut out = Vec::new();
    let mut push = |v: Result<Vec<CriticalPoint>>| {
        if let Ok(pts) = v {
            out.extend(pts.iter().map(|c| c.cartesian()));
        }
    };
    push(d3h_spectrum(p.k.abs().max(1e-3)));
    push(d2h_spectrum(p.rho.clamp(1e-3, 2.0), p.chi));
    if p.chi.cos().abs() < 0.05 {
        push(reflection_plane_spectrum(p.k, p.rho, p.chi > 0.0));
    }
    out
}

/// Phase label from the stratum and the number of maxima.
pub fn phase_of(stratum: StratumLabel, n_max: usize) -> Phase {
    match stratum {
        StratumLabel::Center => Phase::Center,
        StratumLabel::Disk => Phase::Disk,
        StratumLabel::Axis => Phase::Axis,
        StratumLabel::Tetrahedral => Phase::Tetrahedral,
        _ => match n_max {
            4 => Phase::B4,
            3 => Phase::B3,
            _ => Phase::Unresolved,
        },
    }
}

/// Full spectrum of the oriented potential with parameters `p`.
pub fn solve_spectrum(p: &OrientedParams, cfg: &SolverConfig) -> Result<SpectrumReport> {
    let t = from_cylinder(p.k, p.rho, p.chi)?;
    let extra = if cfg.strata_seeds {
        stratum_seeds(p)
    } else {
        Vec::new()
    };
    let set = find_critical_points(&t, cfg, &extra)?;
    Ok(report_from_set(p, set))
}

pub(crate) fn report_from_set(p: &OrientedParams, set: CriticalSet) -> SpectrumReport {
    let n_max = set.points.iter().filter(|c| c.is_max_like()).count();
    let n_min = set.points.iter().filter(|c| c.is_min_like()).count();
    let n_saddle = set.points.iter().filter(|c| c.is_saddle()).count();
    let index_sum = set.points.iter().map(|c| c.index).sum();
    let stratum = classify_stratum(p, 1e-12);
    let absolute_max_at_pole = set.points.iter().all(|c| c.lambda <= 1.0 + 1e-12)
        && set.circles.iter().all(|c| c.value <= 1.0 + 1e-12);
    SpectrumReport {
        params: *p,
        points: set.points,
        circles: set.circles,
        n_max,
        n_min,
        n_saddle,
        index_sum,
        phase: phase_of(stratum, n_max),
        stratum,
        absolute_max_at_pole,
        seeds: set.seeds,
        failures: set.failures,
    }
}

/// Taylor coefficients `c[i][j]` of `u^i v^j` (`i + j ≤ 3`) for the angular
/// potential at `(θ1* + u, θ2* + v)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CubicExpansion {
    pub center: SphericalPoint,
    pub c: [[f64; 4]; 4],
}

impl CubicExpansion {
    pub fn coeff(&self, i: usize, j: usize) -> f64 {
        self.c[i][j]
    }
}

#[derive(Clone, Copy)]
struct Poly3([[f64; 4]; 4]);

impl Poly3 {
    fn constant(a: f64) -> Self {
        let mut c = [[0.0; 4]; 4];
        c[0][0] = a;
        Poly3(c)
    }

    fn add(&self, o: &Poly3, s: f64) -> Poly3 {
        let mut c = self.0;
        for (i, row) in c.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v += s * o.0[i][j];
            }
        }
        Poly3(c)
    }

    fn mul(&self, o: &Poly3) -> Poly3 {
        let mut c = [[0.0; 4]; 4];
        for i in 0..4 {
            for j in 0..4 - i {
                let a = self.0[i][j];
                if a == 0.0 {
                    continue;
                }
                for k in 0..4 - i - j {
                    for l in 0..4 - i - j - k {
                        c[i + k][j + l] += a * o.0[k][l];
                    }
                }
            }
        }
        Poly3(c)
    }

    /// `cos(a + w)` and `sin(a + w)` where `w` is `u` (`first`) or `v`.
    fn trig(a: f64, first: bool) -> (Poly3, Poly3) {
        let (s, c) = a.sin_cos();
        let series = [1.0, 0.0, -0.5, 0.0];
        let sseries = [0.0, 1.0, 0.0, -1.0 / 6.0];
        let mut cp = [[0.0; 4]; 4];
        let mut sp = [[0.0; 4]; 4];
        for n in 0..4 {
            let (i, j) = if first { (n, 0) } else { (0, n) };
            cp[i][j] = c * series[n] - s * sseries[n];
            sp[i][j] = s * series[n] + c * sseries[n];
        }
        (Poly3(cp), Poly3(sp))
    }
}

/// Third-order expansion of the angular potential around a degenerate
/// critical point.
pub fn monkey_saddle_check(
    t: &OctupolarTensor,
    location: &SphericalPoint,
) -> Result<CubicExpansion> {
    let full = t.full();
    let h = full.spherical_hessian(location)?;
    let eigs = crate::tensor::sym2_eigenvalues(&h);
    let soft = eigs[0].abs().min(eigs[1].abs());
    let tol = 1e-6 * t.max_abs().max(1e-300);
    if soft > tol {
        return Err(Error::NotDegenerate(soft));
    }
    let (c1, s1) = Poly3::trig(location.theta1, true);
    let (c2, s2) = Poly3::trig(location.theta2, false);
    let x = [c1.mul(&c2), c1.mul(&s2), s1];
    let mut phi = Poly3::constant(0.0);
    for (i, xi) in x.iter().enumerate() {
        for (j, xj) in x.iter().enumerate() {
            let xij = xi.mul(xj);
            for (k, xk) in x.iter().enumerate() {
                let a = full.entry(i, j, k);
                if a != 0.0 {
                    phi = phi.add(&xij.mul(xk), a);
                }
            }
        }
    }
    Ok(CubicExpansion {
        center: *location,
        c: phi.0,
    })
}
