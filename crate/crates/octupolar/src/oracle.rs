//! Brute-force reference spectrum: dense-grid minima of `|∇Ψ|²` refined by
//! golden-section coordinate descent. Slow, but shares no code with the
//! Newton solver.

use std::f64::consts::PI;

use crate::critical::{sort_points, winding_index, CriticalCircle, CriticalPoint, MorseType};
use crate::orientation::{from_cylinder, OrientedParams};
use crate::solver::{report_from_set, CriticalSet, SpectrumReport};
use crate::tensor::{
    sphere_distance, sym2_eigenvalues, tangent_frame, FullTensor, Mat2, SphericalPoint, Vec3,
};
use crate::Result;

fn chart(p0: &Vec3, e1: &Vec3, e2: &Vec3, u: f64, v: f64) -> Vec3 {
    (p0 + u * e1 + v * e2).normalize()
}

fn grad2(full: &FullTensor, p: &Vec3) -> f64 {
    full.riemannian_gradient(p).norm_squared()
}

fn golden<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64) -> f64 {
    let r = 0.5 * (5.0_f64.sqrt() - 1.0);
    let mut c = b - r * (b - a);
    let mut d = a + r * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while (b - a).abs() > 1e-15 {
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - r * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + r * (b - a);
            fd = f(d);
        }
    }
    0.5 * (a + b)
}

/// Powell direction-set minimization of `|∇Ψ|²`, restarted a few times in the
/// gnomonic chart at the current point.
fn refine(full: &FullTensor, p0: &Vec3, h: f64) -> Vec3 {
    let mut p = p0.normalize();
    let mut width = h;
    for _ in 0..4 {
        let (q, w) = powell(full, &p, width);
        p = q;
        width = w.max(1e-10);
    }
    p
}

fn powell(full: &FullTensor, p0: &Vec3, h: f64) -> (Vec3, f64) {
    let (e1, e2) = tangent_frame(p0);
    let f = |x: [f64; 2]| grad2(full, &chart(p0, &e1, &e2, x[0], x[1]));
    let along = |x: [f64; 2], d: [f64; 2], s: f64| [x[0] + s * d[0], x[1] + s * d[1]];
    let mut x = [0.0, 0.0];
    let mut dirs = [[1.0, 0.0], [0.0, 1.0]];
    let mut width = h;
    let mut travelled = 0.0;
    for _ in 0..300 {
        let start = x;
        for d in dirs {
            let s = golden(|s| f(along(x, d, s)), -width, width);
            x = along(x, d, s);
        }
        let disp = [x[0] - start[0], x[1] - start[1]];
        let step = disp[0].hypot(disp[1]);
        if step > 0.0 {
            let d = [disp[0] / step, disp[1] / step];
            let s = golden(|s| f(along(x, d, s)), -width, width);
            x = along(x, d, s);
            if (d[0] * dirs[1][1] - d[1] * dirs[1][0]).abs() > 1e-3 {
                dirs = [dirs[1], d];
            }
        }
        travelled = step;
        width = (4.0 * step).clamp(1e-14, h);
        if step < 1e-15 {
            break;
        }
    }
    (chart(p0, &e1, &e2, x[0], x[1]), 4.0 * travelled + 1e-8)
}

/// Finite-difference Hessian of `Φ` in the gnomonic chart.
fn fd_hessian(full: &FullTensor, p: &Vec3) -> Mat2 {
    let (e1, e2) = tangent_frame(p);
    let h = 1e-4;
    let f = |u: f64, v: f64| full.potential(&chart(p, &e1, &e2, u, v));
    let f0 = f(0.0, 0.0);
    let fuu = (f(h, 0.0) - 2.0 * f0 + f(-h, 0.0)) / (h * h);
    let fvv = (f(0.0, h) - 2.0 * f0 + f(0.0, -h)) / (h * h);
    let fuv = (f(h, h) - f(h, -h) - f(-h, h) + f(-h, -h)) / (4.0 * h * h);
    Mat2::new(fuu, fuv, fuv, fvv)
}

fn on_band(full: &FullTensor, p: &Vec3) -> bool {
    let sp = SphericalPoint::from_cartesian(p);
    if sp.near_pole() {
        return false;
    }
    (0..64).all(|j| {
        let t2 = -PI + 2.0 * PI * j as f64 / 64.0;
        grad2(full, &SphericalPoint::new(sp.theta1, t2).cartesian()) < 1e-16
    })
}

fn wrap_turn(d: f64) -> f64 {
    (d + PI).rem_euclid(2.0 * PI) - PI
}

/// Centers of grid cells around which the gradient field winds.
fn winding_candidates(full: &FullTensor, n_lat: usize, n_lon: usize) -> Vec<Vec3> {
    let node = |i: usize, j: usize| {
        (
            -PI / 2.0 + (i as f64 + 0.5) * PI / n_lat as f64,
            -PI + (j as f64 + 0.5) * 2.0 * PI / n_lon as f64,
        )
    };
    let angle: Vec<Vec<f64>> = (0..n_lat)
        .map(|i| {
            (0..n_lon)
                .map(|j| {
                    let (a, b) = node(i, j);
                    let (sa, ca) = a.sin_cos();
                    let (sb, cb) = b.sin_cos();
                    let g = full.riemannian_gradient(&SphericalPoint::new(a, b).cartesian());
                    let e_lat = Vec3::new(-sa * cb, -sa * sb, ca);
                    let e_lon = Vec3::new(-sb, cb, 0.0);
                    g.dot(&e_lat).atan2(g.dot(&e_lon))
                })
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    for i in 0..n_lat - 1 {
        for j in 0..n_lon {
            let jn = (j + 1) % n_lon;
            let ring = [angle[i][j], angle[i][jn], angle[i + 1][jn], angle[i + 1][j]];
            let turn: f64 = (0..4).map(|k| wrap_turn(ring[(k + 1) % 4] - ring[k])).sum();
            if turn.abs() > PI {
                let (a0, b0) = node(i, j);
                let (a1, _) = node(i + 1, j);
                let db = 2.0 * PI / n_lon as f64;
                out.push(SphericalPoint::new(0.5 * (a0 + a1), b0 + 0.5 * db).cartesian());
            }
        }
    }
    out
}

/// Local minima of `|∇Ψ|²` on a fine gnomonic grid around a pole, where the
/// latitude-longitude grid degenerates.
fn polar_cap_candidates(full: &FullTensor, pole: &Vec3) -> Vec<Vec3> {
    const N: usize = 81;
    const HALF: f64 = 0.2;
    let (e1, e2) = tangent_frame(pole);
    let at = |i: usize, j: usize| {
        let u = -HALF + 2.0 * HALF * i as f64 / (N - 1) as f64;
        let v = -HALF + 2.0 * HALF * j as f64 / (N - 1) as f64;
        chart(pole, &e1, &e2, u, v)
    };
    let g: Vec<Vec<f64>> = (0..N)
        .map(|i| (0..N).map(|j| grad2(full, &at(i, j))).collect())
        .collect();
    let mut out = Vec::new();
    for i in 1..N - 1 {
        for j in 1..N - 1 {
            let v = g[i][j];
            let is_min =
                (i - 1..=i + 1).all(|a| (j - 1..=j + 1).all(|b| (a, b) == (i, j) || g[a][b] >= v));
            if is_min {
                out.push(at(i, j));
            }
        }
    }
    out
}

/// Reference spectrum from an `n_lat × n_lon` grid.
pub fn oracle_spectrum(p: &OrientedParams, n_lat: usize, n_lon: usize) -> Result<SpectrumReport> {
    let t = from_cylinder(p.k, p.rho, p.chi)?;
    let full = t.full();
    let cell = |i: usize, j: usize| {
        let t1 = -PI / 2.0 + (i as f64 + 0.5) * PI / n_lat as f64;
        let t2 = -PI + (j as f64 + 0.5) * 2.0 * PI / n_lon as f64;
        SphericalPoint::new(t1, t2).cartesian()
    };
    let g: Vec<Vec<f64>> = (0..n_lat)
        .map(|i| (0..n_lon).map(|j| grad2(&full, &cell(i, j))).collect())
        .collect();

    let mut cands: Vec<Vec3> = vec![Vec3::z(), -Vec3::z()];
    for i in 0..n_lat {
        for j in 0..n_lon {
            let v = g[i][j];
            let mut is_min = true;
            'nb: for di in -1i64..=1 {
                for dj in -1i64..=1 {
                    if di == 0 && dj == 0 {
                        continue;
                    }
                    let ii = i as i64 + di;
                    if ii < 0 || ii >= n_lat as i64 {
                        continue;
                    }
                    let jj = (j as i64 + dj).rem_euclid(n_lon as i64) as usize;
                    if g[ii as usize][jj] < v {
                        is_min = false;
                        break 'nb;
                    }
                }
            }
            if is_min {
                cands.push(cell(i, j));
            }
        }
    }

    cands.extend(winding_candidates(&full, n_lat, n_lon));
    cands.extend(polar_cap_candidates(&full, &Vec3::z()));
    cands.extend(polar_cap_candidates(&full, &-Vec3::z()));

    let h = 2.0 * PI / n_lat as f64;
    let mut found: Vec<Vec3> = Vec::new();
    let mut bands: Vec<CriticalCircle> = Vec::new();
    for c in &cands {
        let q = refine(&full, c, h);
        if full.riemannian_gradient(&q).norm() > 1e-7 {
            continue;
        }
        if on_band(&full, &q) {
            let lat = SphericalPoint::from_cartesian(&q).theta1;
            if bands.iter().all(|b| (b.latitude - lat).abs() > 1e-6) {
                let value = full.potential(&q);
                let eigs = sym2_eigenvalues(&fd_hessian(&full, &q));
                bands.push(CriticalCircle {
                    latitude: lat,
                    value,
                    multiplier: 3.0 * value,
                    hessian_eigs: eigs,
                });
            }
            continue;
        }
        if found.iter().all(|f| sphere_distance(f, &q) > 1e-5) {
            found.push(q);
        }
    }
    bands.sort_by(|a, b| a.latitude.total_cmp(&b.latitude));

    let mut points: Vec<CriticalPoint> = found
        .iter()
        .enumerate()
        .map(|(i, q)| {
            let eigs = sym2_eigenvalues(&fd_hessian(&full, q));
            let degenerate = eigs[0].abs().min(eigs[1].abs()) < 1e-5;
            let nn = found
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, o)| sphere_distance(q, o))
                .fold(PI, f64::min);
            let (morse_type, index) = if degenerate {
                let w = winding_index(&full, q, (0.4 * nn).min(1e-3), 64).unwrap_or(0);
                (
                    if w == 1 {
                        MorseType::DegenerateExtremum
                    } else {
                        MorseType::DegenerateSaddle
                    },
                    w,
                )
            } else if eigs[1] < 0.0 {
                (MorseType::Max, 1)
            } else if eigs[0] > 0.0 {
                (MorseType::Min, 1)
            } else {
                (MorseType::Saddle, -1)
            };
            CriticalPoint {
                location: SphericalPoint::from_cartesian(q),
                lambda: full.potential(q),
                hessian_eigs: eigs,
                morse_type,
                index,
                residual: full.riemannian_gradient(q).norm(),
            }
        })
        .collect();
    sort_points(&mut points);
    let seeds = cands.len();
    Ok(report_from_set(
        p,
        CriticalSet {
            points,
            circles: bands,
            seeds,
            failures: 0,
        },
    ))
}
