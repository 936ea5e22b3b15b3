//! The tetrahedral group T_d, its multiplication table and subgroups, and
//! detection of the symmetry group of an oriented potential.

use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::orientation::{from_cylinder, OrientedParams};
use crate::strata::K_TETRA;
use crate::tensor::{Mat3, SphericalPoint, Vec3};
use crate::Result;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GroupElement {
    pub id: usize,
    pub matrix: Mat3,
    pub det: i32,
}

pub fn td_elements() -> Vec<GroupElement> {
    let s2 = 2.0_f64.sqrt();
    let s3 = 3.0_f64.sqrt();
    let r23 = (2.0_f64 / 3.0).sqrt();
    let t = 1.0 / (2.0 * s3);
    let plus = [
        Mat3::identity(),
        Mat3::new(-0.5, s3 / 2.0, 0.0, -s3 / 2.0, -0.5, 0.0, 0.0, 0.0, 1.0),
        Mat3::new(-0.5, -s3 / 2.0, 0.0, s3 / 2.0, -0.5, 0.0, 0.0, 0.0, 1.0),
        Mat3::new(
            0.5,
            s3 / 2.0,
            0.0,
            t,
            -1.0 / 6.0,
            2.0 * s2 / 3.0,
            r23,
            -s2 / 3.0,
            -1.0 / 3.0,
        ),
        Mat3::new(
            0.5,
            t,
            r23,
            s3 / 2.0,
            -1.0 / 6.0,
            -s2 / 3.0,
            0.0,
            2.0 * s2 / 3.0,
            -1.0 / 3.0,
        ),
        Mat3::new(
            0.5,
            -s3 / 2.0,
            0.0,
            -t,
            -1.0 / 6.0,
            2.0 * s2 / 3.0,
            -r23,
            -s2 / 3.0,
            -1.0 / 3.0,
        ),
        Mat3::new(
            0.5,
            -t,
            -r23,
            -s3 / 2.0,
            -1.0 / 6.0,
            -s2 / 3.0,
            0.0,
            2.0 * s2 / 3.0,
            -1.0 / 3.0,
        ),
        Mat3::new(
            -0.5,
            t,
            r23,
            -t,
            5.0 / 6.0,
            -s2 / 3.0,
            -r23,
            -s2 / 3.0,
            -1.0 / 3.0,
        ),
        Mat3::new(
            -0.5,
            -t,
            -r23,
            t,
            5.0 / 6.0,
            -s2 / 3.0,
            r23,
            -s2 / 3.0,
            -1.0 / 3.0,
        ),
        Mat3::new(
            0.0,
            1.0 / s3,
            -r23,
            1.0 / s3,
            -2.0 / 3.0,
            -s2 / 3.0,
            -r23,
            -s2 / 3.0,
            -1.0 / 3.0,
        ),
        Mat3::new(
            0.0,
            -1.0 / s3,
            r23,
            -1.0 / s3,
            -2.0 / 3.0,
            -s2 / 3.0,
            r23,
            -s2 / 3.0,
            -1.0 / 3.0,
        ),
        Mat3::new(
            -1.0,
            0.0,
            0.0,
            0.0,
            1.0 / 3.0,
            2.0 * s2 / 3.0,
            0.0,
            2.0 * s2 / 3.0,
            -1.0 / 3.0,
        ),
    ];
    let m1_minus = Mat3::from_diagonal(&Vec3::new(-1.0, 1.0, 1.0));
    let mut out = Vec::with_capacity(24);
    for (k, m) in plus.iter().enumerate() {
        out.push(GroupElement {
            id: k + 1,
            matrix: *m,
            det: 1,
        });
    }
    for (k, m) in plus.iter().enumerate() {
        out.push(GroupElement {
            id: k + 13,
            matrix: m1_minus * m,
            det: -1,
        });
    }
    out
}

/// The four tetrahedron vertices of the reference tetrahedron.
pub fn tetrahedron_vertices() -> [Vec3; 4] {
    let s2 = 2.0_f64.sqrt();
    let s6 = 6.0_f64.sqrt();
    [
        Vec3::new(0.0, 0.0, 1.0),
        Vec3::new(0.0, 2.0 * s2 / 3.0, -1.0 / 3.0),
        Vec3::new(-s6 / 3.0, -s2 / 3.0, -1.0 / 3.0),
        Vec3::new(s6 / 3.0, -s2 / 3.0, -1.0 / 3.0),
    ]
}

const P11: [[u8; 12]; 12] = [
    [1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12],
    [2, 3, 1, 11, 7, 8, 12, 10, 4, 6, 9, 5],
    [3, 1, 2, 9, 12, 10, 5, 6, 11, 8, 4, 7],
    [4, 12, 6, 5, 1, 11, 9, 2, 10, 7, 3, 8],
    [5, 8, 11, 1, 4, 3, 10, 12, 7, 9, 6, 2],
    [6, 4, 12, 10, 8, 7, 1, 11, 3, 2, 5, 9],
    [7, 10, 9, 2, 11, 1, 6, 5, 12, 4, 8, 3],
    [8, 11, 5, 6, 10, 12, 2, 9, 1, 3, 7, 4],
    [9, 7, 10, 12, 3, 4, 11, 1, 8, 5, 2, 6],
    [10, 9, 7, 8, 6, 5, 3, 4, 2, 1, 12, 11],
    [11, 5, 8, 7, 2, 9, 4, 3, 6, 12, 1, 10],
    [12, 6, 4, 3, 9, 2, 8, 7, 5, 11, 10, 1],
];
const P12: [[u8; 12]; 12] = [
    [13, 14, 15, 16, 17, 18, 19, 20, 21, 22, 23, 24],
    [15, 13, 14, 21, 24, 22, 17, 18, 23, 20, 16, 19],
    [14, 15, 13, 23, 19, 20, 24, 22, 16, 18, 21, 17],
    [18, 16, 24, 22, 20, 19, 13, 23, 15, 14, 17, 21],
    [19, 22, 21, 14, 23, 13, 18, 17, 24, 16, 20, 15],
    [16, 24, 18, 17, 13, 23, 21, 14, 22, 19, 15, 20],
    [17, 20, 23, 13, 16, 15, 22, 24, 19, 21, 18, 14],
    [21, 19, 22, 24, 15, 16, 23, 13, 20, 17, 14, 18],
    [20, 23, 17, 18, 22, 24, 14, 21, 13, 15, 19, 16],
    [23, 17, 20, 19, 14, 21, 16, 15, 18, 24, 13, 22],
    [22, 21, 19, 20, 18, 17, 15, 16, 14, 13, 24, 23],
    [24, 18, 16, 15, 21, 14, 20, 19, 17, 23, 22, 13],
];
const P21: [[u8; 12]; 12] = [
    [13, 14, 15, 16, 17, 18, 19, 20, 21, 22, 23, 24],
    [14, 15, 13, 23, 19, 20, 24, 22, 16, 18, 21, 17],
    [15, 13, 14, 21, 24, 22, 17, 18, 23, 20, 16, 19],
    [16, 24, 18, 17, 13, 23, 21, 14, 22, 19, 15, 20],
    [17, 20, 23, 13, 16, 15, 22, 24, 19, 21, 18, 14],
    [18, 16, 24, 22, 20, 19, 13, 23, 15, 14, 17, 21],
    [19, 22, 21, 14, 23, 13, 18, 17, 24, 16, 20, 15],
    [20, 23, 17, 18, 22, 24, 14, 21, 13, 15, 19, 16],
    [21, 19, 22, 24, 15, 16, 23, 13, 20, 17, 14, 18],
    [22, 21, 19, 20, 18, 17, 15, 16, 14, 13, 24, 23],
    [23, 17, 20, 19, 14, 21, 16, 15, 18, 24, 13, 22],
    [24, 18, 16, 15, 21, 14, 20, 19, 17, 23, 22, 13],
];
const P22: [[u8; 12]; 12] = [
    [1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12],
    [3, 1, 2, 9, 12, 10, 5, 6, 11, 8, 4, 7],
    [2, 3, 1, 11, 7, 8, 12, 10, 4, 6, 9, 5],
    [6, 4, 12, 10, 8, 7, 1, 11, 3, 2, 5, 9],
    [7, 10, 9, 2, 11, 1, 6, 5, 12, 4, 8, 3],
    [4, 12, 6, 5, 1, 11, 9, 2, 10, 7, 3, 8],
    [5, 8, 11, 1, 4, 3, 10, 12, 7, 9, 6, 2],
    [9, 7, 10, 12, 3, 4, 11, 1, 8, 5, 2, 6],
    [8, 11, 5, 6, 10, 12, 2, 9, 1, 3, 7, 4],
    [11, 5, 8, 7, 2, 9, 4, 3, 6, 12, 1, 10],
    [10, 9, 7, 8, 6, 5, 3, 4, 2, 1, 12, 11],
    [12, 6, 4, 3, 9, 2, 8, 7, 5, 11, 10, 1],
];

/// 24×24 table with entries in 1..=24; `t[i-1][j-1]` is the id of `Mi·Mj`.
pub type Table = [[usize; 24]; 24];

/// The table as printed in block form.
pub fn transcribed_table() -> Table {
    let mut t = [[0usize; 24]; 24];
    for i in 0..12 {
        for j in 0..12 {
            t[i][j] = P11[i][j] as usize;
            t[i][j + 12] = P12[i][j] as usize;
            t[i + 12][j] = P21[i][j] as usize;
            t[i + 12][j + 12] = P22[i][j] as usize;
        }
    }
    t
}

fn identify(elements: &[GroupElement], m: &Mat3) -> Option<usize> {
    elements
        .iter()
        .find(|e| (e.matrix - m).amax() < 1e-12)
        .map(|e| e.id)
}

/// The table recomputed from matrix products; 0 marks a product outside the set.
pub fn multiplication_table() -> Table {
    let els = td_elements();
    let mut t = [[0usize; 24]; 24];
    for (i, a) in els.iter().enumerate() {
        for (j, b) in els.iter().enumerate() {
            t[i][j] = identify(&els, &(a.matrix * b.matrix)).unwrap_or(0);
        }
    }
    t
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableCheck {
    pub matching: usize,
    pub total: usize,
    /// `(i, j, computed, transcribed)` for every disagreement.
    pub mismatches: Vec<(usize, usize, usize, usize)>,
}

pub fn verify_table() -> TableCheck {
    let computed = multiplication_table();
    let printed = transcribed_table();
    let mut mismatches = Vec::new();
    for i in 0..24 {
        for j in 0..24 {
            if computed[i][j] != printed[i][j] {
                mismatches.push((i + 1, j + 1, computed[i][j], printed[i][j]));
            }
        }
    }
    TableCheck {
        matching: 576 - mismatches.len(),
        total: 576,
        mismatches,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Subgroup {
    pub name: String,
    pub elements: Vec<usize>,
    /// Direction spanning the fixed subspace, when it is a line.
    pub fixed_axis: Option<[f64; 3]>,
}

fn sg(name: &str, elements: &[usize], axis: Option<[f64; 3]>) -> Subgroup {
    Subgroup {
        name: name.to_string(),
        elements: elements.to_vec(),
        fixed_axis: axis,
    }
}

/// Subgroups as listed: `G1..G8` inside the rotation group, then the mixed
/// families `Ga..Gd`.
pub fn subgroup_lattice() -> Vec<Subgroup> {
    let s2 = 2.0_f64.sqrt();
    let s6 = 6.0_f64.sqrt();
    let mut out = vec![
        sg("G1", &[1, 2, 3], Some([0.0, 0.0, 1.0])),
        sg("G2", &[1, 4, 5], Some([s6, s2, 1.0])),
        sg("G3", &[1, 6, 7], Some([-s6, s2, 1.0])),
        sg("G4", &[1, 8, 9], Some([0.0, -2.0 * s2, 1.0])),
        sg(
            "G5",
            &[1, 10],
            Some([-(1.5_f64).sqrt(), -(0.5_f64).sqrt(), 1.0]),
        ),
        sg(
            "G6",
            &[1, 11],
            Some([(1.5_f64).sqrt(), -(0.5_f64).sqrt(), 1.0]),
        ),
        sg("G7", &[1, 12], Some([0.0, s2, 1.0])),
        sg("G8", &[1, 10, 11, 12], None),
    ];
    let families: [(&str, &[&[usize]]); 4] = [
        (
            "Ga",
            &[
                &[1, 2, 3, 13, 14, 15],
                &[1, 2, 3, 16, 21, 23],
                &[1, 2, 3, 17, 19, 24],
                &[1, 2, 3, 18, 20, 22],
                &[1, 4, 5, 13, 18, 19],
                &[1, 4, 5, 14, 16, 22],
                &[1, 4, 5, 15, 21, 24],
                &[1, 4, 5, 17, 20, 23],
                &[1, 8, 9, 13, 20, 21],
                &[1, 8, 9, 14, 19, 23],
                &[1, 8, 9, 15, 17, 22],
                &[1, 8, 9, 16, 18, 24],
            ],
        ),
        (
            "Gb",
            &[
                &[1, 10, 13, 23],
                &[1, 10, 14, 17],
                &[1, 10, 15, 20],
                &[1, 10, 16, 19],
                &[1, 10, 18, 21],
                &[1, 10, 22, 24],
                &[1, 11, 13, 22],
                &[1, 11, 14, 21],
                &[1, 11, 15, 19],
                &[1, 11, 16, 20],
                &[1, 11, 17, 18],
                &[1, 11, 23, 24],
                &[1, 12, 13, 24],
                &[1, 12, 14, 18],
                &[1, 12, 15, 16],
                &[1, 12, 17, 21],
                &[1, 12, 19, 20],
                &[1, 12, 22, 23],
            ],
        ),
        (
            "Gc",
            &[
                &[1, 10, 11, 12, 13, 22, 23, 24],
                &[1, 10, 11, 12, 14, 17, 18, 21],
                &[1, 10, 11, 12, 15, 16, 19, 20],
            ],
        ),
        (
            "Gd",
            &[&[1, 13], &[1, 14], &[1, 15], &[1, 20], &[1, 21], &[1, 24]],
        ),
    ];
    for (fam, sets) in families {
        for (n, set) in sets.iter().enumerate() {
            out.push(sg(&format!("{fam}{}", n + 1), set, None));
        }
    }
    out
}

pub fn is_closed(elements: &[usize], table: &Table) -> bool {
    elements.iter().all(|&a| {
        elements
            .iter()
            .all(|&b| elements.contains(&table[a - 1][b - 1]))
    })
}

fn inverse(a: usize, table: &Table) -> usize {
    (1..=24)
        .find(|&b| table[a - 1][b - 1] == 1)
        .expect("every element has an inverse")
}

pub fn is_normal(elements: &[usize], table: &Table) -> bool {
    (1..=24).all(|g| {
        let gi = inverse(g, table);
        elements
            .iter()
            .all(|&h| elements.contains(&table[table[g - 1][h - 1] - 1][gi - 1]))
    })
}

/// Whether no nonzero vector is fixed by every element.
pub fn acts_freely(elements: &[usize]) -> bool {
    let els = td_elements();
    let mut stack = nalgebra::DMatrix::<f64>::zeros(3 * elements.len(), 3);
    for (r, &id) in elements.iter().enumerate() {
        let d = els[id - 1].matrix - Mat3::identity();
        for i in 0..3 {
            for j in 0..3 {
                stack[(3 * r + i, j)] = d[(i, j)];
            }
        }
    }
    stack
        .svd(false, false)
        .singular_values
        .iter()
        .all(|s| *s > 1e-9)
}

/// A transformation of the oriented family: rotation by `gamma` about z
/// (`s = 1`) or reflection through the vertical plane at angle `gamma/2`
/// (`s = −1`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OrientedTransform {
    pub gamma: f64,
    pub s: i32,
}

impl OrientedTransform {
    pub fn matrix(&self) -> Mat3 {
        let (sn, c) = self.gamma.sin_cos();
        let s = self.s as f64;
        Mat3::new(c, -s * sn, 0.0, sn, s * c, 0.0, 0.0, 0.0, 1.0)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReflectionPlane {
    /// Angle of the plane's trace in the (x, y) plane.
    pub angle: f64,
    /// `y = m x`; `None` for the plane `x = 0`.
    pub slope: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SymmetryReport {
    pub group_name: String,
    /// T_d elements leaving the potential invariant.
    pub elements: Vec<usize>,
    pub transforms: Vec<OrientedTransform>,
    /// Set when every rotation about z is a symmetry.
    pub o2_family: bool,
    pub reflection_planes: Vec<ReflectionPlane>,
}

/// Reflection slopes `(m1, m2)` of the disk stratum.
pub fn disk_slopes(chi: f64) -> (f64, f64) {
    let (s, c) = chi.sin_cos();
    (-(1.0 + s) / c, (1.0 - s) / c)
}

fn test_grid() -> Vec<Vec3> {
    let mut g = Vec::with_capacity(48 * 96);
    for i in 0..48 {
        let t1 = -PI / 2.0 + (i as f64 + 0.5) * PI / 48.0;
        for j in 0..96 {
            let t2 = -PI + (j as f64 + 0.5) * 2.0 * PI / 96.0;
            g.push(SphericalPoint::new(t1, t2).cartesian());
        }
    }
    g
}

fn invariant(t: &crate::OctupolarTensor, grid: &[Vec3], m: &Mat3) -> bool {
    grid.iter()
        .all(|x| (t.potential(&(m * x)) - t.potential(x)).abs() < 1e-10)
}

fn wrap_2pi(a: f64) -> f64 {
    let r = a.rem_euclid(2.0 * PI);
    if (2.0 * PI - r) < 1e-9 {
        0.0
    } else {
        r
    }
}

/// Invariance group of the oriented potential with parameters `p`.
pub fn detect_symmetry(p: &OrientedParams) -> Result<SymmetryReport> {
    let t = from_cylinder(p.k, p.rho, p.chi)?;
    let grid = test_grid();
    let mut gammas: Vec<f64> = (0..12).map(|k| k as f64 * PI / 6.0).collect();
    gammas.extend((0..360).map(|d| (d as f64).to_radians()));
    if p.chi.cos().abs() > 1e-12 {
        let (m1, m2) = disk_slopes(p.chi);
        gammas.push(2.0 * m1.atan());
        gammas.push(2.0 * m2.atan());
    }
    let mut gammas: Vec<f64> = gammas.into_iter().map(wrap_2pi).collect();
    gammas.sort_by(f64::total_cmp);
    gammas.dedup_by(|a, b| (*a - *b).abs() < 1e-9);

    let mut transforms = Vec::new();
    let mut n_rot_scan = 0;
    for s in [1, -1] {
        for &g in &gammas {
            let tr = OrientedTransform { gamma: g, s };
            if invariant(&t, &grid, &tr.matrix()) {
                transforms.push(tr);
                let one_degree = ((g.to_degrees()).round() - g.to_degrees()).abs() < 1e-9;
                if s == 1 && one_degree {
                    n_rot_scan += 1;
                }
            }
        }
    }
    let o2_family = n_rot_scan == 360;
    let n_rot = transforms.iter().filter(|x| x.s == 1).count();
    let n_ref = transforms.len() - n_rot;

    let elements: Vec<usize> = td_elements()
        .iter()
        .filter(|e| invariant(&t, &grid, &e.matrix))
        .map(|e| e.id)
        .collect();

    let group_name = if elements.len() == 24 {
        "Td"
    } else if o2_family {
        "D∞h"
    } else if n_rot == 3 && n_ref == 3 {
        "D3h"
    } else if n_rot == 2 && n_ref == 2 {
        "D2h"
    } else if n_rot == 3 {
        "C3"
    } else if n_ref == 1 {
        "Dh"
    } else {
        "e"
    };

    let reflection_planes = if o2_family {
        Vec::new()
    } else {
        transforms
            .iter()
            .filter(|x| x.s == -1)
            .map(|x| {
                let angle = x.gamma / 2.0;
                let slope = if angle.cos().abs() < 1e-12 {
                    None
                } else {
                    Some(angle.tan())
                };
                ReflectionPlane { angle, slope }
            })
            .collect()
    };
    Ok(SymmetryReport {
        group_name: group_name.to_string(),
        elements,
        transforms,
        o2_family,
        reflection_planes,
    })
}

/// Whether `(K, ρ)` is a tetrahedral point after folding the sign of `K`.
pub fn is_tetrahedral(p: &OrientedParams, tol: f64) -> bool {
    p.rho.abs() <= tol && (p.k.abs() - K_TETRA).abs() <= tol
}
