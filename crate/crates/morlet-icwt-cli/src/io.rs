//! File formats: two-column signal CSV, scalogram matrix CSV (interleaved
//! re/im column pairs), modulus CSV, and the JSON metadata sidecar.
//!
//! All numeric CSV cells are written with 17 significant digits so that
//! every 64-bit float round-trips exactly; identical inputs always produce
//! byte-identical files (LF line endings, fixed field order).

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use morlet_icwt::{RealSignal, ScaleGrid, Scalogram, TimeGrid};

use crate::error::{CliError, Result};

/// Maximum tolerated deviation of time stamps from a uniform grid,
/// relative to the step.
const UNIFORMITY_TOL: f64 = 1e-6;

/// Scalogram metadata sidecar. Field order is fixed by this struct.
#[derive(Debug, Serialize, Deserialize)]
pub struct Meta {
    pub n: usize,
    pub dt: f64,
    pub t_start: f64,
    pub scales: Vec<f64>,
    pub omega0: f64,
    pub boundary_mode: String,
    pub complex_layout: String,
    pub tool_version: String,
}

/// `<prefix><suffix>` as a path, e.g. `out` -> `out.w.csv`.
pub fn with_suffix(prefix: &Path, suffix: &str) -> PathBuf {
    let mut os = prefix.as_os_str().to_os_string();
    os.push(suffix);
    PathBuf::from(os)
}

fn fmt_cell(x: f64) -> String {
    format!("{x:.16e}")
}

// ---- signal CSV ----

pub fn write_signal_csv(path: &Path, signal: &RealSignal) -> Result<()> {
    let mut out = String::with_capacity(48 * signal.values().len() + 16);
    out.push_str("t,value\n");
    for (t, v) in signal.grid().times().zip(signal.values()) {
        let _ = writeln!(out, "{},{}", fmt_cell(t), fmt_cell(*v));
    }
    std::fs::write(path, out)?;
    Ok(())
}

pub fn read_signal_csv(path: &Path) -> Result<RealSignal> {
    let text = std::fs::read_to_string(path)?;
    let mut lines = text.lines().map(|l| l.trim_end_matches('\r'));
    match lines.next() {
        Some("t,value") => {}
        other => {
            return Err(CliError::validation(
                "E_CSV",
                format!(
                    "{}: expected header 't,value', got {:?}",
                    path.display(),
                    other.unwrap_or("")
                ),
            ))
        }
    }
    let mut times = Vec::new();
    let mut values = Vec::new();
    for (lineno, line) in lines.enumerate() {
        if line.is_empty() {
            continue;
        }
        let mut fields = line.split(',');
        let (t, v) = match (fields.next(), fields.next(), fields.next()) {
            (Some(t), Some(v), None) => (t, v),
            _ => {
                return Err(CliError::validation(
                    "E_CSV",
                    format!("{}: line {} needs exactly 2 fields", path.display(), lineno + 2),
                ))
            }
        };
        let parse = |s: &str, what: &str| {
            s.trim().parse::<f64>().map_err(|_| {
                CliError::validation(
                    "E_CSV",
                    format!(
                        "{}: line {}: unparseable {what} {s:?}",
                        path.display(),
                        lineno + 2
                    ),
                )
            })
        };
        times.push(parse(t, "time")?);
        values.push(parse(v, "value")?);
    }
    if times.len() < 4 {
        return Err(CliError::validation(
            "E_TOO_SHORT",
            format!("{}: need at least 4 samples, got {}", path.display(), times.len()),
        ));
    }
    if times.iter().chain(values.iter()).any(|x| !x.is_finite()) {
        return Err(CliError::validation(
            "E_NAN_INPUT",
            format!("{}: non-finite entries in the input", path.display()),
        ));
    }
    let n = times.len();
    let dt = (times[n - 1] - times[0]) / (n - 1) as f64;
    if !(dt.is_finite() && dt > 0.0) {
        return Err(CliError::validation(
            "E_NONUNIFORM",
            format!("{}: time column must be strictly increasing", path.display()),
        ));
    }
    let worst = times
        .iter()
        .enumerate()
        .map(|(i, t)| (t - (times[0] + i as f64 * dt)).abs())
        .fold(0.0_f64, f64::max);
    if worst > UNIFORMITY_TOL * dt {
        return Err(CliError::validation(
            "E_NONUNIFORM",
            format!(
                "{}: time column deviates from a uniform grid by {:.3e}·dt (tolerance {:.0e}·dt)",
                path.display(),
                worst / dt,
                UNIFORMITY_TOL
            ),
        ));
    }
    let grid = TimeGrid::new(times[0], dt, n)?;
    Ok(RealSignal::new(grid, values)?)
}

// ---- scalogram files ----

pub fn write_scalogram(prefix: &Path, sg: &Scalogram, boundary_mode: &str) -> Result<()> {
    let meta = Meta {
        n: sg.grid().n(),
        dt: sg.grid().dt(),
        t_start: sg.grid().t_start(),
        scales: sg.scales().values().to_vec(),
        omega0: sg.omega0(),
        boundary_mode: boundary_mode.to_string(),
        complex_layout: "interleaved re,im column pairs; row k = scale k".to_string(),
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
    };
    let mut meta_json = serde_json::to_string_pretty(&meta)
        .map_err(|e| CliError::validation("E_META", e.to_string()))?;
    meta_json.push('\n');
    std::fs::write(with_suffix(prefix, ".meta.json"), meta_json)?;

    let n = sg.grid().n();
    let mut w_csv = String::with_capacity(sg.scales().len() * n * 48);
    let mut abs_csv = String::with_capacity(sg.scales().len() * n * 24);
    for row in sg.rows() {
        let mut w_cells = Vec::with_capacity(2 * n);
        let mut abs_cells = Vec::with_capacity(n);
        for c in row {
            w_cells.push(fmt_cell(c.re));
            w_cells.push(fmt_cell(c.im));
            abs_cells.push(fmt_cell(c.norm()));
        }
        w_csv.push_str(&w_cells.join(","));
        w_csv.push('\n');
        abs_csv.push_str(&abs_cells.join(","));
        abs_csv.push('\n');
    }
    std::fs::write(with_suffix(prefix, ".w.csv"), w_csv)?;
    std::fs::write(with_suffix(prefix, ".abs.csv"), abs_csv)?;
    Ok(())
}

pub fn read_scalogram(prefix: &Path) -> Result<Scalogram> {
    let meta_path = with_suffix(prefix, ".meta.json");
    let meta_text = std::fs::read_to_string(&meta_path)?;
    let meta: Meta = serde_json::from_str(&meta_text).map_err(|e| {
        CliError::validation(
            "E_META",
            format!("{}: {}", meta_path.display(), e),
        )
    })?;

    let w_path = with_suffix(prefix, ".w.csv");
    let text = std::fs::read_to_string(&w_path)?;
    let mut rows: Vec<Vec<Complex64>> = Vec::with_capacity(meta.scales.len());
    for (lineno, line) in text.lines().map(|l| l.trim_end_matches('\r')).enumerate() {
        if line.is_empty() {
            continue;
        }
        let cells = line.split(',').collect::<Vec<_>>();
        if cells.len() != 2 * meta.n {
            return Err(CliError::validation(
                "E_DIMENSIONS",
                format!(
                    "{}: row {} has {} cells, metadata says n = {} (expected {})",
                    w_path.display(),
                    lineno + 1,
                    cells.len(),
                    meta.n,
                    2 * meta.n
                ),
            ));
        }
        let mut row = Vec::with_capacity(meta.n);
        for pair in cells.chunks_exact(2) {
            let parse = |s: &str| {
                s.trim().parse::<f64>().map_err(|_| {
                    CliError::validation(
                        "E_CSV",
                        format!("{}: row {}: unparseable cell {s:?}", w_path.display(), lineno + 1),
                    )
                })
            };
            row.push(Complex64::new(parse(pair[0])?, parse(pair[1])?));
        }
        if row.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(CliError::validation(
                "E_NAN_INPUT",
                format!("{}: non-finite entries in row {}", w_path.display(), lineno + 1),
            ));
        }
        rows.push(row);
    }
    if rows.len() != meta.scales.len() {
        return Err(CliError::validation(
            "E_DIMENSIONS",
            format!(
                "{}: {} rows, metadata says {} scales",
                w_path.display(),
                rows.len(),
                meta.scales.len()
            ),
        ));
    }
    let scales = ScaleGrid::new(meta.scales)?;
    let grid = TimeGrid::new(meta.t_start, meta.dt, meta.n)?;
    Ok(Scalogram::new(scales, grid, meta.omega0, rows)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use morlet_icwt::MorletParams;

    fn tricky_values() -> Vec<f64> {
        vec![
            1.0 / 3.0,
            std::f64::consts::SQRT_2,
            -1e-300,
            6.02214076e23,
            -0.0,
            f64::MIN_POSITIVE,
            987654321.1234568,
            -2.2250738585072014e-308,
        ]
    }

    #[test]
    fn signal_csv_roundtrip_is_bit_exact() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("s.csv");
        let grid = TimeGrid::new(-0.25, 1.0 / 3.0, 8).unwrap();
        let s = RealSignal::new(grid, tricky_values()).unwrap();
        write_signal_csv(&path, &s).unwrap();
        let back = read_signal_csv(&path).unwrap();
        let bits = |v: &[f64]| v.iter().map(|x| x.to_bits()).collect::<Vec<_>>();
        assert_eq!(bits(back.values()), bits(s.values()));
        assert_eq!(back.grid().n(), 8);
        assert_eq!(back.grid().t_start().to_bits(), (-0.25f64).to_bits());
    }

    #[test]
    fn scalogram_roundtrip_is_bit_exact() {
        let dir = tempfile::tempdir().unwrap();
        let prefix = dir.path().join("out");
        let grid = TimeGrid::new(0.0, 0.125, 4).unwrap();
        let scales = ScaleGrid::new(vec![0.0, 1.0 / 7.0, 0.3]).unwrap();
        let v = tricky_values();
        let rows: Vec<Vec<Complex64>> = (0..3)
            .map(|k| {
                (0..4)
                    .map(|j| Complex64::new(v[(k + j) % 8], v[(k * 3 + j) % 8]))
                    .collect()
            })
            .collect();
        let sg = Scalogram::new(scales, grid, MorletParams::default().omega0(), rows).unwrap();
        write_scalogram(&prefix, &sg, "reflect").unwrap();
        let back = read_scalogram(&prefix).unwrap();
        assert_eq!(back.scales().values(), sg.scales().values());
        for (ra, rb) in back.rows().iter().zip(sg.rows()) {
            for (a, b) in ra.iter().zip(rb) {
                assert_eq!(a.re.to_bits(), b.re.to_bits());
                assert_eq!(a.im.to_bits(), b.im.to_bits());
            }
        }
    }

    #[test]
    fn malformed_inputs_get_stable_codes() {
        let dir = tempfile::tempdir().unwrap();
        let write = |name: &str, text: &str| {
            let p = dir.path().join(name);
            std::fs::write(&p, text).unwrap();
            p
        };
        let code = |p: &Path| read_signal_csv(p).unwrap_err().code;

        let bad_header = write("a.csv", "time,val\n0,1\n1,2\n2,3\n3,4\n");
        assert_eq!(code(&bad_header), "E_CSV");
        let three_fields = write("b.csv", "t,value\n0,1,9\n1,2,9\n2,3,9\n3,4,9\n");
        assert_eq!(code(&three_fields), "E_CSV");
        let short = write("c.csv", "t,value\n0,1\n1,2\n2,3\n");
        assert_eq!(code(&short), "E_TOO_SHORT");
        let nan = write("d.csv", "t,value\n0,1\n1,nan\n2,3\n3,4\n");
        assert_eq!(code(&nan), "E_NAN_INPUT");
        let nonuniform = write("e.csv", "t,value\n0,1\n1,2\n2.5,3\n3,4\n");
        assert_eq!(code(&nonuniform), "E_NONUNIFORM");
        let decreasing = write("f.csv", "t,value\n3,1\n2,2\n1,3\n0,4\n");
        assert_eq!(code(&decreasing), "E_NONUNIFORM");
        assert_eq!(
            read_signal_csv(&dir.path().join("missing.csv")).unwrap_err().code,
            "E_IO"
        );
    }

    #[test]
    fn inconsistent_scalogram_files_are_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let prefix = dir.path().join("out");
        std::fs::write(
            with_suffix(&prefix, ".meta.json"),
            r#"{"n":2,"dt":0.5,"t_start":0.0,"scales":[0.0,0.1],"omega0":6.283,
                "boundary_mode":"reflect","complex_layout":"pairs","tool_version":"0"}"#,
        )
        .unwrap();
        // Row with 3 cells instead of 2n = 4.
        std::fs::write(with_suffix(&prefix, ".w.csv"), "1,2,3\n4,5,6\n").unwrap();
        assert_eq!(read_scalogram(&prefix).unwrap_err().code, "E_DIMENSIONS");
        // Right width, wrong row count.
        std::fs::write(with_suffix(&prefix, ".w.csv"), "1,2,3,4\n").unwrap();
        assert_eq!(read_scalogram(&prefix).unwrap_err().code, "E_DIMENSIONS");
        // Non-finite cell.
        std::fs::write(with_suffix(&prefix, ".w.csv"), "1,2,inf,4\n5,6,7,8\n").unwrap();
        assert_eq!(read_scalogram(&prefix).unwrap_err().code, "E_NAN_INPUT");
        // Broken JSON.
        std::fs::write(with_suffix(&prefix, ".meta.json"), "{not json").unwrap();
        assert_eq!(read_scalogram(&prefix).unwrap_err().code, "E_META");
    }
}
