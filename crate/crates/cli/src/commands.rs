//! The five subcommands.

use std::fmt::Write as _;

use num_complex::Complex64;
use polardyn_core::dgfamily::{
    dg_build_exact, dg_build_float, dg_conductor, dg_cross_validate, dg_stability_predicate, CrossValidation, DGMap,
    StabilityVerdict, TParam,
};
use polardyn_core::dynamics::{degree_sequence, IterateReport};
use polardyn_core::exactalg::{
    hompoly_to_text, parse_map_expr, rational_text, CycloNumber, PolyMap, Rational, Scalar,
};
use polardyn_core::greenpot::{green_eval, normalize_lift, sample_sphere, slice_row, NormalizedLift};
use polardyn_core::slicemass::{line_mass, summarize_sweep, sweep_plan, MassOptions};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::output::{emit, fmt_f64, pgm, report_csv, report_json, sibling};
use crate::parse::{parse_list, parse_point, parse_t};
use crate::{CliError, DegreesArgs, FamilyArgs, Format, GreenArgs, MapSource, MassArgs, RunConfig, StabilityArgs};

enum Lift {
    Exact(PolyMap<CycloNumber>),
    Float(PolyMap<Complex64>),
}

impl Lift {
    fn normalized(&self) -> Result<NormalizedLift, CliError> {
        Ok(match self {
            Lift::Exact(f) => normalize_lift(f)?,
            Lift::Float(f) => normalize_lift(f)?,
        })
    }
}

fn load(cfg: &RunConfig, src: &MapSource) -> Result<Lift, CliError> {
    match (&src.t, &src.map) {
        (Some(t), None) => match parse_t(t)? {
            TParam::Exact(r) => Ok(Lift::Exact(dg_build_exact(&r, cfg.conductor_cap)?.lift)),
            TParam::Float(x) => Ok(Lift::Float(dg_build_float(x).lift)),
        },
        (None, Some(m)) => Ok(Lift::Exact(parse_map_expr(m)?)),
        _ => Err(CliError::usage("give exactly one of --t or --map")),
    }
}

fn exact_t(s: &str, what: &str) -> Result<Rational, CliError> {
    match parse_t(s)? {
        TParam::Exact(r) => Ok(r),
        TParam::Float(_) => Err(CliError::usage(format!("{what} needs an exact parameter written p/q, got `{s}`"))),
    }
}

fn check_format(cfg: &RunConfig, allowed: &[Format], default: Format) -> Result<Format, CliError> {
    let f = cfg.format.unwrap_or(default);
    if allowed.contains(&f) {
        Ok(f)
    } else {
        Err(CliError::usage(format!("format {f:?} is not available for this subcommand")))
    }
}

fn json_text(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("plain data") + "\n"
}

pub fn degrees(cfg: &RunConfig, a: &DegreesArgs) -> Result<(), CliError> {
    let format = check_format(cfg, &[Format::Json, Format::Csv], Format::Json)?;
    if a.big_n == 0 {
        return Err(CliError::usage("--N must be positive"));
    }
    let f = match load(cfg, &a.source)? {
        Lift::Exact(f) => f,
        Lift::Float(_) => return Err(CliError::usage("degrees needs an exact parameter written p/q")),
    };
    let rep = degree_sequence(&f, a.big_n, cfg.degree_cap)?;
    let text = match format {
        Format::Csv => report_csv(&rep),
        _ => report_json(&rep),
    };
    emit(cfg.out.as_deref(), &text)
}

fn verdict_json(t: &Rational, v: &StabilityVerdict) -> Value {
    let (name, s) = match v {
        StabilityVerdict::Stable => ("stable", None),
        StabilityVerdict::Unstable { s } => ("unstable", Some(*s)),
    };
    json!({
        "verdict": name,
        "witness_s": s,
        "expected_first_drop": v.expected_first_drop(),
        "explanation": v.explanation(t),
    })
}

fn rows_json(rep: &IterateReport) -> Value {
    serde_json::from_str(&report_json(rep)).expect("own output")
}

fn cross_json(cv: &CrossValidation) -> Value {
    json!({
        "agree": true,
        "first_drop": cv.first_drop,
        "report": rows_json(&cv.report),
    })
}

pub fn stability(cfg: &RunConfig, a: &StabilityArgs) -> Result<(), CliError> {
    check_format(cfg, &[Format::Json], Format::Json)?;
    let t = exact_t(&a.t, "stability")?;
    let v = dg_stability_predicate(&t);
    let mut out = json!({ "t": rational_text(&t) });
    merge(&mut out, verdict_json(&t, &v));
    if let Some(n) = a.big_n {
        let cv = dg_cross_validate(&t, n, cfg.degree_cap, cfg.conductor_cap)?;
        out["cross_validation"] = cross_json(&cv);
    }
    emit(cfg.out.as_deref(), &json_text(&out))
}

fn merge(into: &mut Value, from: Value) {
    if let (Value::Object(a), Value::Object(b)) = (into, from) {
        a.extend(b);
    }
}

fn complex_json(z: Complex64) -> Value {
    json!([z.re, z.im])
}

fn point_json<C: Scalar>(p: &[C]) -> Value {
    let exact: Vec<String> = p.iter().map(Scalar::coeff_text).collect();
    let float: Vec<Value> = p.iter().map(|c| complex_json(c.to_complex())).collect();
    if C::EXACT {
        json!({ "exact": exact, "float": float })
    } else {
        json!({ "float": float })
    }
}

fn family_json<C: Scalar>(m: &DGMap<C>) -> Result<Value, CliError> {
    let coeff = |c: &C| {
        if C::EXACT {
            json!({ "exact": c.coeff_text(), "float": complex_json(c.to_complex()) })
        } else {
            json!({ "float": complex_json(c.to_complex()) })
        }
    };
    let comps = |f: &PolyMap<C>| -> Vec<String> { f.components().iter().map(hompoly_to_text).collect() };
    let indet = |forward: bool| -> Result<Value, CliError> {
        match m.indeterminacy_points(forward) {
            Ok(pts) => Ok(Value::Array(pts.iter().map(|p| point_json(p)).collect())),
            Err(polardyn_core::Error::InvalidArgument(msg)) => Ok(json!({ "degenerate": msg })),
            Err(e) => Err(e.into()),
        }
    };
    Ok(json!({
        "coefficients": { "a": coeff(&m.params.a), "b": coeff(&m.params.b), "c": coeff(&m.params.c) },
        "lift": comps(&m.lift),
        "inverse_lift": comps(&m.inverse_lift),
        "fixed_point": point_json(&m.fixed_point()?),
        "indeterminacy": {
            "forward": indet(true)?,
            "inverse": indet(false)?,
        },
    }))
}

pub fn family(cfg: &RunConfig, a: &FamilyArgs) -> Result<(), CliError> {
    check_format(cfg, &[Format::Json], Format::Json)?;
    let out = match parse_t(&a.t)? {
        TParam::Exact(t) => {
            let m = dg_build_exact(&t, cfg.conductor_cap)?;
            let mut out = json!({
                "t": rational_text(&t),
                "mode": "exact",
                "conductor": dg_conductor(&t).to_string().parse::<u64>().unwrap_or(0),
            });
            merge(&mut out, family_json(&m)?);
            let v = dg_stability_predicate(&t);
            out["stability"] = verdict_json(&t, &v);
            if let Some(n) = a.big_n {
                out["cross_validation"] = cross_json(&dg_cross_validate(&t, n, cfg.degree_cap, cfg.conductor_cap)?);
            }
            out
        }
        TParam::Float(x) => {
            if a.big_n.is_some() {
                return Err(CliError::usage("cross-validation needs an exact parameter written p/q"));
            }
            let m = dg_build_float(x);
            let mut out = json!({ "t": x, "mode": "float" });
            merge(&mut out, family_json(&m)?);
            out["stability"] = Value::Null;
            out
        }
    };
    emit(cfg.out.as_deref(), &json_text(&out))
}

fn csv_header(nvars: usize) -> String {
    let mut s = String::new();
    for j in 0..nvars {
        let _ = write!(s, "point_re{j},point_im{j},");
    }
    s.push_str("n,value\n");
    s
}

fn csv_row(s: &mut String, point: &[Complex64], n: u32, value: f64) {
    for z in point {
        let _ = write!(s, "{},{},", fmt_f64(z.re), fmt_f64(z.im));
    }
    let _ = writeln!(s, "{n},{}", fmt_f64(value));
}

pub fn green(cfg: &RunConfig, a: &GreenArgs) -> Result<(), CliError> {
    let l = load(cfg, &a.source)?.normalized()?;
    let k = l.nvars();
    if let (Some(base), Some(dir)) = (&a.slice_base, &a.slice_dir) {
        check_format(cfg, &[Format::Csv, Format::Pgm], Format::Csv)?;
        let out = cfg.out.as_deref().ok_or_else(|| CliError::usage("heatmaps need --out"))?;
        if a.resolution == 0 || !(a.half_width > 0.0) || !(a.clip > 0.0) {
            return Err(CliError::usage("resolution, half-width and clip must be positive"));
        }
        let (base, dir) = (parse_point(base)?, parse_point(dir)?);
        let res = a.resolution;
        let rows: Vec<Vec<f64>> = (0..res)
            .into_par_iter()
            .map(|row| slice_row(&l, &base, &dir, a.half_width, res, row, a.n))
            .collect::<Result<_, _>>()?;
        let grid: Vec<f64> = rows.into_iter().flatten().collect();
        let mut csv = String::from("u,v,n,value\n");
        let h = 2.0 * a.half_width / res as f64;
        for row in 0..res {
            for col in 0..res {
                let u = -a.half_width + (col as f64 + 0.5) * h;
                let v = -a.half_width + (row as f64 + 0.5) * h;
                let _ = writeln!(csv, "{},{},{},{}", fmt_f64(u), fmt_f64(v), a.n, fmt_f64(grid[row * res + col]));
            }
        }
        let (csv_path, pgm_path) = match cfg.format {
            Some(Format::Pgm) => (sibling(out, "csv"), out.to_path_buf()),
            _ => (out.to_path_buf(), sibling(out, "pgm")),
        };
        emit(Some(&csv_path), &csv)?;
        return emit(Some(&pgm_path), &pgm(&grid, res, a.clip));
    }
    check_format(cfg, &[Format::Csv], Format::Csv)?;
    let points = match &a.point {
        Some(p) => vec![parse_point(p)?],
        None => {
            if a.samples == 0 {
                return Err(CliError::usage("--samples must be positive"));
            }
            sample_sphere(a.samples, cfg.seed, k)
        }
    };
    let samples = points
        .par_iter()
        .map(|p| green_eval(&l, p, a.n).map_err(CliError::from))
        .collect::<Result<Vec<_>, _>>()?;
    let mut csv = csv_header(k);
    for s in &samples {
        csv_row(&mut csv, &s.point, s.n, s.value);
    }
    emit(cfg.out.as_deref(), &csv)
}

pub fn mass(cfg: &RunConfig, a: &MassArgs) -> Result<(), CliError> {
    check_format(cfg, &[Format::Csv], Format::Csv)?;
    let tp = parse_t(&a.t)?;
    let t_star = tp.to_f64();
    let offsets = parse_list(&a.offsets)?;
    if a.lines == 0 {
        return Err(CliError::usage("--lines must be positive"));
    }
    let opts = MassOptions { resolution: a.resolution, radius: a.radius, split: a.split, clip: a.clip, ..MassOptions::default() };
    opts.validate()?;
    let exact_map = match &tp {
        TParam::Exact(r) => Some(dg_build_exact(r, cfg.conductor_cap)?),
        TParam::Float(_) => None,
    };
    let lifts = offsets
        .iter()
        .map(|&off| match &exact_map {
            Some(m) if off == 0.0 => normalize_lift(&m.lift),
            _ => normalize_lift(&dg_build_float(t_star + off).lift),
        })
        .collect::<Result<Vec<_>, _>>()?;
    let bound = match (&exact_map, a.no_exact_bound) {
        (Some(_), false) if a.n == 0 => Some(Rational::from_i64(0)),
        (Some(m), false) => {
            let rep = degree_sequence(&m.lift, a.n, cfg.degree_cap)?;
            Some(rep.rows.last().expect("n >= 1").mass_lower_bound.clone())
        }
        _ => None,
    };
    let plan = sweep_plan(t_star, &offsets, a.lines, cfg.seed);
    let results = plan
        .par_iter()
        .map(|task| line_mass(&lifts[task.t_index], &task.line, a.n, a.big_m, &opts))
        .collect::<Result<Vec<_>, _>>()?;
    let rows = summarize_sweep(&plan, &results, a.n, a.big_m, &offsets);

    let mut csv = String::from("t,offset,n,M,lines,mean_sublevel,mean_total");
    csv.push_str(if bound.is_some() { ",exact_bound\n" } else { "\n" });
    for r in &rows {
        let _ = write!(
            csv,
            "{},{},{},{},{},{},{}",
            fmt_f64(r.t),
            fmt_f64(r.offset),
            r.n,
            fmt_f64(r.m),
            r.lines,
            fmt_f64(r.mean_sublevel),
            fmt_f64(r.mean_total)
        );
        if let Some(b) = &bound {
            csv.push(',');
            if r.offset == 0.0 {
                csv.push_str(&rational_text(b));
            }
        }
        csv.push('\n');
    }

    let t_json = match &tp {
        TParam::Exact(r) => json!(rational_text(r)),
        TParam::Float(x) => json!(x),
    };
    let by_offset = |pick_max: bool| {
        rows.iter()
            .min_by(|x, y| {
                let (ax, ay) = (x.offset.abs(), y.offset.abs());
                if pick_max { ay.total_cmp(&ax) } else { ax.total_cmp(&ay) }
            })
            .expect("at least one offset")
    };
    let (near, far) = (by_offset(false), by_offset(true));
    let summary = json!({
        "t_star": t_json,
        "n": a.n,
        "M": a.big_m,
        "lines": a.lines,
        "resolution": a.resolution,
        "seed": cfg.seed,
        "exact_bound": bound.as_ref().map(rational_text),
        "exact_bound_value": bound.as_ref().map(polardyn_core::exactalg::rational_to_f64),
        "rows": rows.iter().map(|r| json!({
            "t": r.t,
            "offset": r.offset,
            "mean_sublevel": r.mean_sublevel,
            "mean_total": r.mean_total,
        })).collect::<Vec<_>>(),
        "trend": {
            "nearest_offset": near.offset,
            "farthest_offset": far.offset,
            "sublevel_change_toward_t_star": near.mean_sublevel - far.mean_sublevel,
        },
    });
    emit(cfg.out.as_deref(), &csv)?;
    match cfg.out.as_deref() {
        Some(p) => emit(Some(&sibling(p, "summary.json")), &json_text(&summary)),
        None => {
            eprint!("{}", json_text(&summary));
            Ok(())
        }
    }
}
