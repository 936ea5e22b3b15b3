//! Tracing the separatrix between the ten-point and fourteen-point phases
//! by bisection on the critical-point count.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::critical::CriticalPoint;
use crate::error::{Error, Result};
use crate::orientation::OrientedParams;
use crate::solver::{solve_spectrum, SolverConfig, SpectrumReport};
use crate::tensor::sphere_distance;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SeparatrixConfig {
    pub solver: SolverConfig,
    /// Bracket width of the K bisection.
    pub k_tol: f64,
    pub k_floor: f64,
    pub k_max: f64,
    /// Bracket width of the ρ bisection locating the cusp.
    pub rho_tol: f64,
    pub chi_samples: usize,
    pub rho_samples: usize,
}

impl Default for SeparatrixConfig {
    fn default() -> Self {
        Self {
            solver: SolverConfig {
                grid_lat: 48,
                grid_lon: 96,
                ..SolverConfig::default()
            },
            k_tol: 1e-6,
            k_floor: 1e-6,
            k_max: 4.0,
            rho_tol: 1e-6,
            chi_samples: 25,
            rho_samples: 40,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Branch {
    /// Fold with ten points on the surface.
    S1,
    /// Fold with twelve points on the surface.
    S2,
    /// Cusp with eight points.
    L1,
    /// ρ = 0, where the surface degenerates to K = 0.
    Axis,
    Unknown,
}

impl Branch {
    pub fn on_surface_count(&self) -> Option<usize> {
        match self {
            Branch::S1 => Some(10),
            Branch::S2 => Some(12),
            Branch::L1 => Some(8),
            _ => None,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Branch::S1 => "S1",
            Branch::S2 => "S2",
            Branch::L1 => "L1",
            Branch::Axis => "axis",
            Branch::Unknown => "unknown",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SectionSample {
    pub rho: f64,
    pub k_crit: f64,
    pub k_s1: Option<f64>,
    pub k_s2_inner: Option<f64>,
    pub k_s2_outer: Option<f64>,
    pub branch: Branch,
    pub on_surface_count: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeparatrixSection {
    pub chi: f64,
    pub samples: Vec<SectionSample>,
    /// `(ρ*, K*)` where the branches meet.
    pub cusp: Option<(f64, f64)>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeparatrixSurface {
    pub sections: Vec<SeparatrixSection>,
    /// Cusp line as `(K, ρ, χ)` triples.
    pub l1: Vec<[f64; 3]>,
    /// Outer boundary as `(K, ρ, χ)` triples.
    pub l2: Vec<[f64; 3]>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Side {
    Below,
    Band,
    Above,
}

fn solve(k: f64, rho: f64, chi: f64, cfg: &SeparatrixConfig) -> Result<SpectrumReport> {
    solve_spectrum(&OrientedParams::new(k, rho, chi), &cfg.solver)
}

fn side(r: &SpectrumReport) -> Result<Side> {
    match r.count() {
        14 => Ok(Side::Above),
        12 => Ok(Side::Band),
        c if c <= 10 && r.circles.is_empty() => Ok(Side::Below),
        c => Err(Error::CountAmbiguous {
            k: r.params.k,
            counts: vec![c],
        }),
    }
}

/// Bisects `[lo, hi]` where `lo` is on side `a` and `hi` is not.
fn bisect_k(
    rho: f64,
    chi: f64,
    mut lo: (f64, SpectrumReport),
    mut hi: (f64, SpectrumReport),
    cfg: &SeparatrixConfig,
) -> Result<((f64, SpectrumReport), (f64, SpectrumReport))> {
    let a = side(&lo.1)?;
    while hi.0 - lo.0 > cfg.k_tol.min(1e-3 * hi.0).max(1e-15) {
        let mid = 0.5 * (lo.0 + hi.0);
        let r = solve(mid, rho, chi, cfg)?;
        if side(&r)? == a {
            lo = (mid, r);
        } else {
            hi = (mid, r);
        }
    }
    Ok((lo, hi))
}

fn check_repeat(
    k: f64,
    rho: f64,
    chi: f64,
    r: &SpectrumReport,
    cfg: &SeparatrixConfig,
) -> Result<()> {
    let alt = SolverConfig {
        grid_lat: 32,
        grid_lon: 64,
        ..cfg.solver.clone()
    };
    let again = solve_spectrum(&OrientedParams::new(k, rho, chi), &alt)?;
    if again.count() != r.count() {
        return Err(Error::CountAmbiguous {
            k,
            counts: vec![r.count(), again.count()],
        });
    }
    Ok(())
}

/// Branch from the points that appear between `lo` and `hi`.
fn branch_from_birth(lo: &[CriticalPoint], hi: &[CriticalPoint]) -> Branch {
    let mut pairs: Vec<(f64, usize, usize)> = Vec::new();
    for (i, a) in lo.iter().enumerate() {
        for (j, b) in hi.iter().enumerate() {
            pairs.push((sphere_distance(&a.cartesian(), &b.cartesian()), i, j));
        }
    }
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut used_lo = vec![false; lo.len()];
    let mut used_hi = vec![false; hi.len()];
    for (_, i, j) in pairs {
        if !used_lo[i] && !used_hi[j] {
            used_lo[i] = true;
            used_hi[j] = true;
        }
    }
    let Some(n1) = (0..hi.len()).find(|&j| !used_hi[j]) else {
        return Branch::Unknown;
    };
    let p1 = hi[n1].cartesian();
    let nearest = hi
        .iter()
        .enumerate()
        .filter(|(j, _)| *j != n1)
        .map(|(_, q)| sphere_distance(&p1, &q.cartesian()))
        .fold(f64::INFINITY, f64::min);
    let cluster: Vec<&CriticalPoint> = hi
        .iter()
        .filter(|q| sphere_distance(&p1, &q.cartesian()) <= 4.0 * nearest)
        .collect();
    let index_sum: i32 = cluster.iter().map(|c| c.index).sum();
    match (cluster.len(), index_sum) {
        (2, 0) => Branch::S2,
        (3, -1) | (3, 1) => Branch::S1,
        (4, -2) => Branch::L1,
        _ => Branch::Unknown,
    }
}

/// Critical `K` and branch at one `(ρ, χ)`, starting from `guess`.
pub fn locate(
    rho: f64,
    chi: f64,
    guess: Option<f64>,
    cfg: &SeparatrixConfig,
) -> Result<SectionSample> {
    let empty = |k: f64, branch: Branch| SectionSample {
        rho,
        k_crit: k,
        k_s1: None,
        k_s2_inner: None,
        k_s2_outer: None,
        branch,
        on_surface_count: branch.on_surface_count(),
    };
    if rho < 1e-12 {
        return Ok(empty(0.0, Branch::Axis));
    }
    let floor = solve(cfg.k_floor, rho, chi, cfg)?;
    if side(&floor)? == Side::Above {
        return Ok(empty(0.0, Branch::L1));
    }
    let mut lo = (cfg.k_floor, floor);
    let mut hi_k = guess
        .map(|g| (1.25 * g).max(2.0 * cfg.k_floor))
        .unwrap_or(0.5);
    let hi = loop {
        let r = solve(hi_k, rho, chi, cfg)?;
        match side(&r)? {
            Side::Above => break (hi_k, r),
            _ => {
                lo = (hi_k, r);
                hi_k *= 2.0;
                if hi_k > cfg.k_max {
                    return Err(Error::NonConvergence(format!(
                        "no fourteen-point phase below K = {}",
                        cfg.k_max
                    )));
                }
            }
        }
    };
    if let Some(g) = guess {
        let k = 0.8 * g;
        if k > lo.0 && k < hi.0 {
            let r = solve(k, rho, chi, cfg)?;
            if side(&r)? == Side::Below {
                lo = (k, r);
            }
        }
    }
    let (lo, hi) = bisect_k(rho, chi, lo, hi, cfg)?;
    check_repeat(lo.0, rho, chi, &lo.1, cfg)?;
    check_repeat(hi.0, rho, chi, &hi.1, cfg)?;
    match (side(&lo.1)?, side(&hi.1)?) {
        (Side::Below, Side::Above) => {
            let k = 0.5 * (lo.0 + hi.0);
            let branch = branch_from_birth(&lo.1.points, &hi.1.points);
            let mut s = empty(k, branch);
            match branch {
                Branch::S2 => {
                    s.k_s2_inner = Some(k);
                    s.k_s2_outer = Some(k);
                }
                _ => s.k_s1 = Some(k),
            }
            Ok(s)
        }
        (Side::Below, Side::Band) => {
            let inner = 0.5 * (lo.0 + hi.0);
            let mut top = (hi_k.max(hi.0), solve(hi_k.max(hi.0), rho, chi, cfg)?);
            while side(&top.1)? != Side::Above {
                top.0 *= 2.0;
                top.1 = solve(top.0, rho, chi, cfg)?;
            }
            let (a, b) = bisect_k(rho, chi, hi, top, cfg)?;
            let outer = 0.5 * (a.0 + b.0);
            let mut s = empty(inner, Branch::S2);
            s.k_s2_inner = Some(inner);
            s.k_s2_outer = Some(outer);
            Ok(s)
        }
        _ => Ok(empty(0.5 * (lo.0 + hi.0), Branch::Unknown)),
    }
}

fn is_fold(b: Branch) -> bool {
    matches!(b, Branch::S1 | Branch::S2)
}

/// Bisects on ρ between samples of different branch.
fn refine_cusp(
    chi: f64,
    a: &SectionSample,
    b: &SectionSample,
    cfg: &SeparatrixConfig,
) -> Result<(f64, f64)> {
    let (mut lo, mut hi) = (a.clone(), b.clone());
    while hi.rho - lo.rho > cfg.rho_tol {
        let mid = 0.5 * (lo.rho + hi.rho);
        let s = locate(
            mid,
            chi,
            Some(0.5 * (lo.k_crit + hi.k_crit).max(cfg.k_floor)),
            cfg,
        )?;
        if s.branch == Branch::L1 {
            return Ok((mid, s.k_crit));
        }
        if s.branch == lo.branch {
            lo = s;
        } else {
            hi = s;
        }
    }
    Ok((0.5 * (lo.rho + hi.rho), 0.5 * (lo.k_crit + hi.k_crit)))
}

/// One section of the separatrix at fixed χ.
pub fn trace_section(
    chi: f64,
    rho_grid: &[f64],
    cfg: &SeparatrixConfig,
) -> Result<SeparatrixSection> {
    let mut samples: Vec<SectionSample> = Vec::with_capacity(rho_grid.len());
    let mut guess = None;
    for &rho in rho_grid {
        let s = locate(rho, chi, guess, cfg)?;
        guess = (s.k_crit > cfg.k_floor).then_some(s.k_crit);
        samples.push(s);
    }
    let mut cusp = None;
    for w in samples.windows(2) {
        if w[0].branch == Branch::L1 {
            cusp = Some((w[0].rho, w[0].k_crit));
            break;
        }
        if is_fold(w[0].branch) && is_fold(w[1].branch) && w[0].branch != w[1].branch {
            cusp = Some(refine_cusp(chi, &w[0], &w[1], cfg)?);
            break;
        }
    }
    if cusp.is_none() {
        if let Some(l1) = samples.iter().find(|s| s.branch == Branch::L1) {
            cusp = Some((l1.rho, l1.k_crit));
        }
    }
    if cusp.is_none() {
        if let Some(last) = samples
            .last()
            .filter(|s| s.branch == Branch::S1 && s.rho < 2.0)
        {
            let edge = locate(2.0 - 1e-4, chi, Some(last.k_crit), cfg)?;
            cusp = match edge.branch {
                Branch::S1 => Some((2.0, edge.k_crit)),
                Branch::S2 => Some(refine_cusp(chi, last, &edge, cfg)?),
                _ => None,
            };
        }
    }
    Ok(SeparatrixSection { chi, samples, cusp })
}

/// Evenly spaced interior samples of `(lo, hi)`.
pub fn interior_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (1..=n)
        .map(|i| lo + (hi - lo) * i as f64 / (n + 1) as f64)
        .collect()
}

/// Evenly spaced samples of `[lo, hi]` including both ends.
pub fn closed_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![lo];
    }
    (0..n)
        .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
        .collect()
}

/// Sections over `chi_grid`, the cusp line and the outer boundary line.
pub fn trace_surface(
    chi_grid: &[f64],
    rho_grid: &[f64],
    cfg: &SeparatrixConfig,
) -> Result<SeparatrixSurface> {
    let sections: Vec<SeparatrixSection> = chi_grid
        .par_iter()
        .map(|&chi| trace_section(chi, rho_grid, cfg))
        .collect::<Result<Vec<_>>>()?;
    let l1 = sections
        .iter()
        .filter_map(|s| s.cusp.map(|(rho, k)| [k, rho, s.chi]))
        .collect();
    let edges: Vec<[f64; 3]> = chi_grid
        .par_iter()
        .map(|&chi| {
            let s = locate(2.0 - 1e-4, chi, None, cfg)?;
            Ok([s.k_crit, 2.0, chi])
        })
        .collect::<Result<Vec<_>>>()?;
    let mut l2: Vec<[f64; 3]> = chi_grid.iter().map(|&chi| [0.0, 2.0, chi]).collect();
    l2.extend(edges.into_iter().filter(|e| e[0] > cfg.k_floor));
    Ok(SeparatrixSurface { sections, l1, l2 })
}
