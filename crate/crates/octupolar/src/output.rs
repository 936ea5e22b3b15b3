//! Text, CSV and JSON rendering.

use serde::Serialize;
use std::io::Write;
use std::path::Path;

use crate::critical::CriticalPoint;
use crate::error::Result;
use crate::solver::SpectrumReport;

pub const SPECTRUM_SCHEMA: &str = "octupolar.spectrum/1";
pub const SEPARATRIX_SCHEMA: &str = "octupolar.separatrix/1";

/// Seventeen significant digits, enough to round-trip any `f64`.
pub fn fmt_f64(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        format!("{v}")
    }
}

pub fn fmt_opt(v: Option<f64>) -> String {
    v.map(fmt_f64).unwrap_or_default()
}

/// Pretty JSON with object keys in sorted order.
pub fn to_sorted_json<T: Serialize>(value: &T) -> Result<String> {
    let v = serde_json::to_value(value)?;
    let mut s = serde_json::to_string_pretty(&v)?;
    s.push('\n');
    Ok(s)
}

/// Wraps a payload with a schema tag.
pub fn versioned<T: Serialize>(schema: &str, payload: &T) -> Result<serde_json::Value> {
    let mut map = serde_json::Map::new();
    map.insert("schema".into(), serde_json::Value::String(schema.into()));
    map.insert("data".into(), serde_json::to_value(payload)?);
    Ok(serde_json::Value::Object(map))
}

pub fn csv_string(header: &[&str], rows: &[Vec<String>]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for r in rows {
        w.write_record(r)?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| crate::Error::Io(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

/// Writes through a sibling temporary file and renames it into place.
pub fn atomic_write(path: &Path, contents: &[u8]) -> Result<()> {
    let dir = path
        .parent()
        .filter(|p| !p.as_os_str().is_empty())
        .unwrap_or(Path::new("."));
    let name = path
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_default();
    let tmp = dir.join(format!(".{name}.tmp"));
    {
        let mut f = std::fs::File::create(&tmp)?;
        f.write_all(contents)?;
        f.sync_all()?;
    }
    std::fs::rename(&tmp, path)?;
    Ok(())
}

fn angle(v: f64, degrees: bool) -> f64 {
    if degrees {
        v.to_degrees()
    } else {
        v
    }
}

pub fn point_row(n: usize, c: &CriticalPoint, degrees: bool) -> String {
    format!(
        "{:>3}  {:>+13.9}  {:>+13.9}  {:>+13.9}  {:>+12.6}  {:>+12.6}  {:<20}  {:>2}",
        n,
        angle(c.location.theta1, degrees),
        angle(c.location.theta2, degrees),
        c.lambda,
        c.hessian_eigs[0],
        c.hessian_eigs[1],
        c.morse_type.label(),
        c.index
    )
}

/// Table in the layout `n, θ1, θ2, λ, Hessian eigenvalues, type, index`.
pub fn render_report(r: &SpectrumReport, degrees: bool) -> String {
    let mut out = String::new();
    let p = &r.params;
    out.push_str(&format!(
        "K = {:.9}  rho = {:.9}  chi = {:.9}{}\n",
        p.k,
        p.rho,
        angle(p.chi, degrees),
        if degrees { " deg" } else { "" }
    ));
    out.push_str(&format!(
        "stratum: {}  phase: {}  points: {}  maxima: {}  minima: {}  saddles: {}  index sum: {}\n",
        r.stratum.name(),
        r.phase.label(),
        r.count(),
        r.n_max,
        r.n_min,
        r.n_saddle,
        r.index_sum
    ));
    out.push_str("  n         theta1         theta2         lambda        sigma1        sigma2  type                  ι\n");
    for (i, c) in r.points.iter().enumerate() {
        out.push_str(&point_row(i + 1, c, degrees));
        out.push('\n');
    }
    for c in &r.circles {
        out.push_str(&format!(
            "circle: theta1 = {:+.9}  z = {:+.9}  value = {:+.9}  multiplier = {:+.9}  sigma = {:+.6}\n",
            angle(c.latitude, degrees),
            c.z(),
            c.value,
            c.multiplier,
            if c.is_max_like() { c.hessian_eigs[0] } else { c.hessian_eigs[1] }
        ));
    }
    out
}
