//! Writers for JSON, CSV and portable graymap output.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use polardyn_core::dynamics::IterateReport;
use polardyn_core::exactalg::rational_text;
use serde::Serialize;

use crate::CliError;

/// Writes to `path`, or stdout when `None`.
pub fn emit(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::io(p, e)),
        None => {
            use std::io::Write;
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| CliError::io(Path::new("<stdout>"), e))
        }
    }
}

/// Shortest round-trip decimal, in exponent form for very small or large
/// magnitudes; infinities as `-inf` / `inf`.
pub fn fmt_f64(x: f64) -> String {
    if x == f64::NEG_INFINITY {
        "-inf".into()
    } else if x == f64::INFINITY {
        "inf".into()
    } else if x.is_nan() {
        "nan".into()
    } else if x != 0.0 && !(1e-5..1e16).contains(&x.abs()) {
        format!("{x:e}")
    } else {
        format!("{x}")
    }
}

/// `stem.ext`, replacing the extension of `path`.
pub fn sibling(path: &Path, ext: &str) -> PathBuf {
    path.with_extension(ext)
}

#[derive(Serialize)]
struct RowJson {
    n: u32,
    deg: u32,
    #[serde(rename = "degH")]
    deg_h: u32,
    mass_bound: String,
    stable: bool,
}

#[derive(Serialize)]
struct ReportJson {
    d: u32,
    rows: Vec<RowJson>,
}

pub fn report_json(rep: &IterateReport) -> String {
    let j = ReportJson {
        d: rep.d,
        rows: rep
            .rows
            .iter()
            .map(|r| RowJson {
                n: r.n,
                deg: r.deg_fn,
                deg_h: r.deg_hn,
                mass_bound: rational_text(&r.mass_lower_bound),
                stable: r.stable_so_far,
            })
            .collect(),
    };
    serde_json::to_string(&j).expect("plain data") + "\n"
}

pub fn report_csv(rep: &IterateReport) -> String {
    let mut s = String::from("n,deg,degH,mass_bound,stable\n");
    for r in &rep.rows {
        let _ = writeln!(
            s,
            "{},{},{},{},{}",
            r.n,
            r.deg_fn,
            r.deg_hn,
            rational_text(&r.mass_lower_bound),
            r.stable_so_far
        );
    }
    s
}

/// 8-bit plain graymap of a row-major grid (first row = lowest `v`, drawn
/// at the bottom). `0` maps to white, `-clip` and below to black.
pub fn pgm(values: &[f64], res: usize, clip: f64) -> String {
    let mut s = format!("P2\n{res} {res}\n255\n");
    for row in (0..res).rev() {
        let line: Vec<String> = values[row * res..(row + 1) * res]
            .iter()
            .map(|&g| {
                let x = if g.is_nan() { -clip } else { g.clamp(-clip, 0.0) };
                ((x + clip) / clip * 255.0).round().to_string()
            })
            .collect();
        s.push_str(&line.join(" "));
        s.push('\n');
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats() {
        assert_eq!(fmt_f64(f64::NEG_INFINITY), "-inf");
        assert_eq!(fmt_f64(-0.5), "-0.5");
        assert_eq!(fmt_f64(1e-300), "1e-300");
        assert_eq!(fmt_f64(-2.5e20), "-2.5e20");
        assert_eq!(fmt_f64(0.0), "0");
    }

    #[test]
    fn graymap_levels() {
        let g = pgm(&[0.0, -40.0, f64::NEG_INFINITY, -20.0], 2, 40.0);
        assert_eq!(g, "P2\n2 2\n255\n0 128\n255 0\n");
    }
}
