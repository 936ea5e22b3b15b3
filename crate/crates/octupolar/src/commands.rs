//! Implementations of the command-line verbs. Each returns the text destined
//! for standard output and writes any requested files.

use rayon::prelude::*;
use serde::Serialize;
use std::f64::consts::{FRAC_PI_2, FRAC_PI_6, PI};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::config::Config;
use crate::critical::CriticalPoint;
use crate::error::{Error, Result};
use crate::oracle::oracle_spectrum;
use crate::orientation::{orient_with, Orientation, OrientedParams};
use crate::output::{
    atomic_write, csv_string, fmt_f64, fmt_opt, render_report, to_sorted_json, versioned,
    SEPARATRIX_SCHEMA, SPECTRUM_SCHEMA,
};
use crate::separatrix::{closed_grid, interior_grid, trace_surface};
use crate::solver::{find_critical_points, solve_spectrum, SpectrumReport};
use crate::strata::StratumLabel;
use crate::symmetry::{
    detect_symmetry, is_closed, is_normal, multiplication_table, subgroup_lattice, td_elements,
    transcribed_table, verify_table,
};
use crate::tensor::{OctupolarTensor, SphericalPoint};

/// Exactly one way of specifying the tensor.
#[derive(Debug, Clone, PartialEq)]
pub enum Input {
    Cylinder { k: f64, rho: f64, chi: f64 },
    Raw([f64; 7]),
    TensorFile(PathBuf),
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct AngleUnits {
    pub degrees: bool,
}

impl AngleUnits {
    pub fn input(&self, a: f64) -> f64 {
        if self.degrees {
            a.to_radians()
        } else {
            a
        }
    }

    pub fn output(&self, a: f64) -> f64 {
        if self.degrees {
            a.to_degrees()
        } else {
            a
        }
    }
}

/// Reads seven numbers separated by whitespace, commas or brackets; `#`
/// starts a comment.
pub fn read_tensor_file(path: &Path) -> Result<OctupolarTensor> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_tensor_text(&text)
}

pub fn parse_tensor_text(text: &str) -> Result<OctupolarTensor> {
    let values: Vec<f64> = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or(""))
        .flat_map(|l| l.split(|c: char| c.is_whitespace() || matches!(c, ',' | '[' | ']')))
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<f64>()
                .map_err(|e| Error::Config(format!("bad tensor entry {s:?}: {e}")))
        })
        .collect::<Result<_>>()?;
    let arr: [f64; 7] = values.try_into().map_err(|v: Vec<f64>| {
        Error::Config(format!("expected 7 tensor parameters, found {}", v.len()))
    })?;
    Ok(OctupolarTensor::from_array(arr))
}

impl Input {
    /// The tensor itself, without normalization.
    pub fn tensor(&self, units: AngleUnits) -> Result<OctupolarTensor> {
        match self {
            Input::Cylinder { k, rho, chi } => {
                OrientedParams::new(*k, *rho, units.input(*chi)).tensor()
            }
            Input::Raw(a) => Ok(OctupolarTensor::from_array(*a)),
            Input::TensorFile(p) => read_tensor_file(p),
        }
    }

    /// Cylinder parameters, orienting the tensor first when it is given by
    /// components.
    pub fn resolve(
        &self,
        cfg: &Config,
        units: AngleUnits,
    ) -> Result<(OrientedParams, Option<Orientation>)> {
        match self {
            Input::Cylinder { k, rho, chi } => {
                let p = OrientedParams::new(*k, *rho, units.input(*chi));
                p.tensor()?;
                Ok((p, None))
            }
            _ => {
                let o = orient_with(&self.tensor(units)?, &cfg.solver)?;
                Ok((o.params, Some(o)))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
struct OrientationRecord {
    scale: f64,
    rotation: [[f64; 3]; 3],
}

#[derive(Debug, Clone, PartialEq, Serialize)]
struct AnalysisRecord<'a> {
    report: &'a SpectrumReport,
    orientation: Option<OrientationRecord>,
    solver: &'static str,
}

fn orientation_record(o: &Orientation) -> OrientationRecord {
    let mut rotation = [[0.0; 3]; 3];
    for (i, row) in rotation.iter_mut().enumerate() {
        for (j, v) in row.iter_mut().enumerate() {
            *v = o.rotation[(i, j)];
        }
    }
    OrientationRecord {
        scale: o.scale,
        rotation,
    }
}

fn orientation_text(o: &Option<Orientation>) -> String {
    match o {
        None => String::new(),
        Some(o) => format!("oriented with scale {:.12}\n", o.scale),
    }
}

fn finish_report(
    report: &SpectrumReport,
    orientation: &Option<Orientation>,
    solver: &'static str,
    units: AngleUnits,
    json: Option<&Path>,
) -> Result<String> {
    if let Some(path) = json {
        let rec = AnalysisRecord {
            report,
            orientation: orientation.as_ref().map(orientation_record),
            solver,
        };
        atomic_write(
            path,
            to_sorted_json(&versioned(SPECTRUM_SCHEMA, &rec)?)?.as_bytes(),
        )?;
    }
    Ok(orientation_text(orientation) + &render_report(report, units.degrees))
}

/// Full spectrum as a table, optionally mirrored to JSON.
pub fn analyze(
    input: &Input,
    cfg: &Config,
    units: AngleUnits,
    json: Option<&Path>,
) -> Result<String> {
    let (p, o) = input.resolve(cfg, units)?;
    let report = solve_spectrum(&p, &cfg.solver)?;
    finish_report(&report, &o, "newton", units, json)
}

/// Same as [`analyze`] with the brute-force grid solver.
pub fn oracle(
    input: &Input,
    cfg: &Config,
    units: AngleUnits,
    json: Option<&Path>,
) -> Result<String> {
    let (p, o) = input.resolve(cfg, units)?;
    let report = oracle_spectrum(&p, cfg.oracle.n_lat, cfg.oracle.n_lon)?;
    finish_report(&report, &o, "grid", units, json)
}

pub fn phase_line(report: &SpectrumReport, group: &str) -> String {
    let where_ = match report.stratum {
        StratumLabel::Bulk => format!("bulk {}", report.phase.label()),
        StratumLabel::ReflectionPlane(_) => {
            format!("{} in {}", report.stratum.name(), report.phase.label())
        }
        s => s.name().to_string(),
    };
    format!(
        "{group}, {where_}, {} maxima, variant {}, absolute max at pole {}",
        report.n_max,
        if report.variant_minus() { "-" } else { "+" },
        if report.absolute_max_at_pole {
            "yes"
        } else {
            "no"
        }
    )
}

/// One line: symmetry group, stratum or phase, maxima, variant.
pub fn phase(input: &Input, cfg: &Config, units: AngleUnits) -> Result<String> {
    let (p, _) = input.resolve(cfg, units)?;
    let report = solve_spectrum(&p, &cfg.solver)?;
    let sym = detect_symmetry(&p)?;
    Ok(phase_line(&report, &sym.group_name) + "\n")
}

/// `lo:hi:n`, sampled with both ends included.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridAxis {
    pub lo: f64,
    pub hi: f64,
    pub n: usize,
}

impl GridAxis {
    pub fn new(lo: f64, hi: f64, n: usize) -> Self {
        Self { lo, hi, n }
    }

    pub fn values(&self) -> Vec<f64> {
        if self.n == 0 {
            Vec::new()
        } else {
            closed_grid(self.lo, self.hi, self.n)
        }
    }
}

impl FromStr for GridAxis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let bad = || Error::Config(format!("grid axis {s:?} is not lo:hi:n"));
        match parts.as_slice() {
            [v] => {
                let v: f64 = v.trim().parse().map_err(|_| bad())?;
                Ok(Self::new(v, v, 1))
            }
            [lo, hi, n] => Ok(Self::new(
                lo.trim().parse().map_err(|_| bad())?,
                hi.trim().parse().map_err(|_| bad())?,
                n.trim().parse().map_err(|_| bad())?,
            )),
            _ => Err(bad()),
        }
    }
}

impl std::fmt::Display for GridAxis {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}:{}:{}", fmt_f64(self.lo), fmt_f64(self.hi), self.n)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepSpec {
    pub k: GridAxis,
    pub rho: GridAxis,
    pub chi: GridAxis,
}

impl SweepSpec {
    /// Cells in output order: K outermost, χ innermost.
    pub fn cells(&self, units: AngleUnits) -> Vec<OrientedParams> {
        let (ks, rs, cs) = (self.k.values(), self.rho.values(), self.chi.values());
        let mut out = Vec::with_capacity(ks.len() * rs.len() * cs.len());
        for &k in &ks {
            for &r in &rs {
                for &c in &cs {
                    out.push(OrientedParams::new(k, r, units.input(c)));
                }
            }
        }
        out
    }

    fn signature(&self, units: AngleUnits) -> String {
        format!(
            "# sweep K={} rho={} chi={} degrees={}",
            self.k, self.rho, self.chi, units.degrees
        )
    }
}

pub const SWEEP_HEADER: [&str; 6] = ["K", "rho", "chi", "count", "n_max", "phase"];
const SWEEP_CHUNK: usize = 32;

fn sweep_row(p: &OrientedParams, cfg: &Config, units: AngleUnits) -> Vec<String> {
    let mut row = vec![fmt_f64(p.k), fmt_f64(p.rho), fmt_f64(units.output(p.chi))];
    match solve_spectrum(p, &cfg.solver) {
        Ok(r) => {
            row.push(r.count().to_string());
            row.push(r.n_max.to_string());
            row.push(r.phase.label().to_string());
        }
        Err(e) => {
            row.push(String::new());
            row.push(String::new());
            row.push(match e {
                Error::NonConvergence(_) => "nonconvergence".into(),
                _ => "error".into(),
            });
        }
    }
    row
}

fn read_checkpoint(path: &Path, signature: &str) -> Vec<Vec<String>> {
    let Ok(text) = std::fs::read_to_string(path) else {
        return Vec::new();
    };
    let mut lines = text.splitn(2, '\n');
    if lines.next() != Some(signature) {
        return Vec::new();
    }
    let body = lines.next().unwrap_or("");
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_reader(body.as_bytes());
    rdr.records()
        .map_while(|r| r.ok())
        .filter(|r| r.len() == SWEEP_HEADER.len())
        .map(|r| r.iter().map(str::to_string).collect())
        .collect()
}

fn write_checkpoint(path: &Path, signature: &str, rows: &[Vec<String>]) -> Result<()> {
    let body = csv_string(&SWEEP_HEADER, rows)?;
    atomic_write(path, format!("{signature}\n{body}").as_bytes())
}

pub fn default_checkpoint(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".ckpt");
    PathBuf::from(s)
}

/// Grid sweep written to `out` as CSV. Completed rows are kept in a
/// checkpoint file so an interrupted run resumes where it stopped.
pub fn sweep(
    spec: &SweepSpec,
    cfg: &Config,
    units: AngleUnits,
    out: &Path,
    checkpoint: Option<&Path>,
) -> Result<String> {
    let cells = spec.cells(units);
    for c in &cells {
        c.tensor()?;
    }
    let ckpt = checkpoint
        .map(Path::to_path_buf)
        .unwrap_or_else(|| default_checkpoint(out));
    let signature = spec.signature(units);
    let mut rows = read_checkpoint(&ckpt, &signature);
    rows.truncate(cells.len());
    let resumed = rows.len();
    while rows.len() < cells.len() {
        let end = (rows.len() + SWEEP_CHUNK).min(cells.len());
        let chunk: Vec<Vec<String>> = cells[rows.len()..end]
            .par_iter()
            .map(|p| sweep_row(p, cfg, units))
            .collect();
        rows.extend(chunk);
        if rows.len() < cells.len() {
            write_checkpoint(&ckpt, &signature, &rows)?;
        }
    }
    atomic_write(out, csv_string(&SWEEP_HEADER, &rows)?.as_bytes())?;
    if ckpt.exists() {
        std::fs::remove_file(&ckpt)?;
    }
    Ok(format!(
        "{} cells written to {} ({} resumed)\n",
        rows.len(),
        out.display(),
        resumed
    ))
}

pub const SECTION_HEADER: [&str; 7] = [
    "chi",
    "rho",
    "K_s1",
    "K_s2_inner",
    "K_s2_outer",
    "branch",
    "on_surface_count",
];

/// Separatrix over the sector, as `sections.csv` and `surface.json` in `dir`.
pub fn separatrix(
    chi: Option<GridAxis>,
    rho: Option<GridAxis>,
    cfg: &Config,
    units: AngleUnits,
    dir: &Path,
) -> Result<String> {
    let sc = &cfg.separatrix;
    let chi_grid: Vec<f64> = match chi {
        Some(g) => g.values().into_iter().map(|c| units.input(c)).collect(),
        None => closed_grid(-FRAC_PI_2, -FRAC_PI_6, sc.chi_samples),
    };
    let rho_grid = match rho {
        Some(g) => g.values(),
        None => interior_grid(0.0, 2.0, sc.rho_samples),
    };
    let surface = trace_surface(&chi_grid, &rho_grid, sc)?;
    let mut rows = Vec::new();
    for s in &surface.sections {
        for x in &s.samples {
            rows.push(vec![
                fmt_f64(units.output(s.chi)),
                fmt_f64(x.rho),
                fmt_opt(x.k_s1),
                fmt_opt(x.k_s2_inner),
                fmt_opt(x.k_s2_outer),
                x.branch.label().to_string(),
                x.on_surface_count
                    .map(|c| c.to_string())
                    .unwrap_or_default(),
            ]);
        }
    }
    std::fs::create_dir_all(dir)?;
    let csv_path = dir.join("sections.csv");
    let json_path = dir.join("surface.json");
    atomic_write(&csv_path, csv_string(&SECTION_HEADER, &rows)?.as_bytes())?;
    atomic_write(
        &json_path,
        to_sorted_json(&versioned(SEPARATRIX_SCHEMA, &surface)?)?.as_bytes(),
    )?;
    Ok(format!(
        "{} sections, {} samples, {} cusps\nwrote {} and {}\n",
        surface.sections.len(),
        rows.len(),
        surface.l1.len(),
        csv_path.display(),
        json_path.display()
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlotKind {
    Contour,
    Polar,
}

impl FromStr for PlotKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "contour" => Ok(PlotKind::Contour),
            "polar" => Ok(PlotKind::Polar),
            _ => Err(Error::Config(format!("unknown plot kind {s:?}"))),
        }
    }
}

pub const CONTOUR_HEADER: [&str; 5] = ["layer", "theta1", "theta2", "value", "type"];
pub const POLAR_HEADER: [&str; 8] = ["layer", "theta1", "theta2", "x", "y", "z", "value", "type"];

fn plot_row(
    kind: PlotKind,
    layer: &str,
    sp: &SphericalPoint,
    value: f64,
    label: &str,
    units: AngleUnits,
) -> Vec<String> {
    let (a, b) = (
        fmt_f64(units.output(sp.theta1)),
        fmt_f64(units.output(sp.theta2)),
    );
    match kind {
        PlotKind::Contour => vec![layer.into(), a, b, fmt_f64(value), label.into()],
        PlotKind::Polar => {
            let e = sp.cartesian() * value;
            vec![
                layer.into(),
                a,
                b,
                fmt_f64(e.x),
                fmt_f64(e.y),
                fmt_f64(e.z),
                fmt_f64(value),
                label.into(),
            ]
        }
    }
}

/// Grid of the potential over `(θ1, θ2)` (`resolution + 1` latitudes by
/// `2·resolution + 1` longitudes), followed by the critical points.
pub fn plotdata_csv(
    t: &OctupolarTensor,
    kind: PlotKind,
    resolution: usize,
    cfg: &Config,
    units: AngleUnits,
) -> Result<String> {
    let n = resolution.max(1);
    let mut rows = Vec::with_capacity((n + 1) * (2 * n + 1));
    for i in 0..=n {
        let t1 = -FRAC_PI_2 + PI * i as f64 / n as f64;
        for j in 0..=2 * n {
            let t2 = -PI + PI * j as f64 / n as f64;
            let sp = SphericalPoint::new(t1, t2);
            rows.push(plot_row(
                kind,
                "grid",
                &sp,
                t.spherical_potential(&sp),
                "",
                units,
            ));
        }
    }
    if t.max_abs() > 1e-14 {
        let set = find_critical_points(t, &cfg.solver, &[])?;
        let markers: Vec<&CriticalPoint> = set.points.iter().collect();
        for c in markers {
            rows.push(plot_row(
                kind,
                "critical",
                &c.location,
                c.lambda,
                c.morse_type.label(),
                units,
            ));
        }
        for c in &set.circles {
            let sp = SphericalPoint::new(c.latitude, 0.0);
            rows.push(plot_row(kind, "circle", &sp, c.value, "circle", units));
        }
    }
    let header: &[&str] = match kind {
        PlotKind::Contour => &CONTOUR_HEADER,
        PlotKind::Polar => &POLAR_HEADER,
    };
    csv_string(header, &rows)
}

pub fn plotdata(
    input: &Input,
    kind: PlotKind,
    resolution: Option<usize>,
    cfg: &Config,
    units: AngleUnits,
    out: &Path,
) -> Result<String> {
    let t = input.tensor(units)?;
    let text = plotdata_csv(
        &t,
        kind,
        resolution.unwrap_or(cfg.plot.resolution),
        cfg,
        units,
    )?;
    atomic_write(out, text.as_bytes())?;
    Ok(format!("wrote {}\n", out.display()))
}

fn fmt_entry(x: f64) -> String {
    let r = if x.abs() < 1e-15 { 0.0 } else { x };
    format!("{r:+.6}")
}

/// The group matrices, multiplication table and subgroups. With `verify`
/// the table is recomputed from products; the flag is `false` on mismatch.
pub fn group(verify: bool) -> (String, bool) {
    let mut out = String::new();
    out.push_str("elements\n");
    for e in td_elements() {
        let m = e.matrix;
        out.push_str(&format!("M{:<2} det {:+}", e.id, e.det));
        for i in 0..3 {
            out.push_str(&format!(
                "  [{} {} {}]",
                fmt_entry(m[(i, 0)]),
                fmt_entry(m[(i, 1)]),
                fmt_entry(m[(i, 2)])
            ));
        }
        out.push('\n');
    }
    out.push_str("\nmultiplication table (row i, column j: Mi Mj)\n");
    for row in transcribed_table() {
        let cells: Vec<String> = row.iter().map(|v| format!("{v:>2}")).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    let table = multiplication_table();
    out.push_str("\nsubgroups\n");
    for g in subgroup_lattice() {
        let closed = is_closed(&g.elements, &table);
        let normal = closed && is_normal(&g.elements, &table);
        let axis = g
            .fixed_axis
            .map(|a| format!("  axis ({:.6}, {:.6}, {:.6})", a[0], a[1], a[2]))
            .unwrap_or_default();
        out.push_str(&format!(
            "{:<5} {:?}  closed {}  normal {}{}\n",
            g.name,
            g.elements,
            if closed { "yes" } else { "no" },
            if normal { "yes" } else { "no" },
            axis
        ));
    }
    let mut ok = true;
    if verify {
        let check = verify_table();
        ok = check.mismatches.is_empty();
        out.push_str(&format!(
            "\n{}/{} entries match\n",
            check.matching, check.total
        ));
        for (i, j, c, p) in &check.mismatches {
            out.push_str(&format!("  M{i} M{j}: computed {c}, transcribed {p}\n"));
        }
        let open: Vec<String> = subgroup_lattice()
            .into_iter()
            .filter(|g| !is_closed(&g.elements, &table))
            .map(|g| g.name)
            .collect();
        out.push_str(&format!(
            "{} listed sets are not closed: {}\n",
            open.len(),
            open.join(" ")
        ));
    }
    (out, ok)
}
