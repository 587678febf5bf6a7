//! Acceptance criteria, one PASS/FAIL line each. Runs as a plain binary so
//! the lines are always printed.

use std::process::{Command, Output};
use std::time::{Duration, Instant};

use num_complex::Complex64;
use polardyn_core::dgfamily::{dg_build_exact, dg_build_float, dg_cross_validate};
use polardyn_core::dynamics::{check_factor_divisibility, float_cross_check, iterate_all};
use polardyn_core::exactalg::{parse_map_expr, Rational};
use polardyn_core::greenpot::*;
use polardyn_core::slicemass::{disk_mass, line_mass, omega_disk_mass, random_lines, MassOptions};
use serde_json::Value;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polardyn")).args(args).output().expect("binary runs")
}

fn cli_json(args: &[&str]) -> Result<Value, String> {
    let out = cli(args);
    if !out.status.success() {
        return Err(format!("{args:?} exited {:?}: {}", out.status.code(), String::from_utf8_lossy(&out.stderr)));
    }
    serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn q(p: i64, d: i64) -> Rational {
    Rational::new(p.into(), d.into())
}

fn parse_fraction(s: &str) -> f64 {
    let (p, q) = s.split_once('/').unwrap();
    p.parse::<f64>().unwrap() / q.parse::<f64>().unwrap()
}

fn squares() -> NormalizedLift {
    normalize_lift(&parse_map_expr("x^2, y^2, z^2").unwrap()).unwrap()
}

fn stable_case() -> Check {
    let start = Instant::now();
    let v = cli_json(&["degrees", "--t", "1/3", "--N", "4"])?;
    let elapsed = start.elapsed();
    let rows = v["rows"].as_array().ok_or("no rows")?;
    let degs: Vec<u64> = rows.iter().filter_map(|r| r["deg"].as_u64()).collect();
    ensure(degs == [2, 4, 8, 16], || format!("degrees {degs:?}"))?;
    ensure(rows.iter().all(|r| r["mass_bound"] == "0/1"), || "nonzero mass bound".into())?;
    ensure(elapsed < Duration::from_secs(60), || format!("took {elapsed:?}"))?;
    let f = dg_build_exact(&q(1, 3), 64).map_err(|e| e.to_string())?.lift;
    let points = sample_sphere(20, 0, 3);
    let mut worst = 0.0f64;
    for fac in iterate_all(&f, 4, 64).map_err(|e| e.to_string())? {
        worst = worst.max(float_cross_check(&f, &fac, &points));
    }
    ensure(worst < 1e-8, || format!("float cross-check error {worst:e}"))?;
    Ok(format!("degrees {degs:?}, float error {worst:.1e}, {:.2} s", elapsed.as_secs_f64()))
}

fn unstable_case() -> Check {
    let start = Instant::now();
    let v = cli_json(&["degrees", "--t", "1/2", "--N", "5"])?;
    let elapsed = start.elapsed();
    let rows = v["rows"].as_array().ok_or("no rows")?;
    let row = rows
        .iter()
        .find(|r| r["deg"].as_u64().unwrap() < 1 << r["n"].as_u64().unwrap())
        .ok_or("no degree drop")?;
    let n = row["n"].as_u64().unwrap() as u32;
    let bound = parse_fraction(row["mass_bound"].as_str().unwrap());
    ensure(row["degH"].as_u64().unwrap() > 0, || "H constant".into())?;
    ensure(bound > 0.0, || "bound not positive".into())?;
    let f = dg_build_exact(&q(1, 2), 64).map_err(|e| e.to_string())?.lift;
    let facs = iterate_all(&f, 5, 64).map_err(|e| e.to_string())?;
    let divides = check_factor_divisibility(&facs[n as usize - 1], &facs[n as usize], 2, 1).map_err(|e| e.to_string())?;
    ensure(divides, || format!("H_{n}^2 does not divide H_{}", n + 1))?;
    ensure(elapsed < Duration::from_secs(600), || format!("took {elapsed:?}"))?;
    Ok(format!("first drop n = {n}, deg H = {}, bound {bound}, H_n^2 | H_(n+1), {:.2} s", row["degH"], elapsed.as_secs_f64()))
}

fn predicate_agreement() -> Check {
    let mut notes = Vec::new();
    for t in ["1/2", "1/3", "1/4", "2/3", "3/4", "1/5"] {
        let out = cli(&["stability", "--t", t, "--N", "4"]);
        let code = out.status.code();
        ensure(code != Some(3) && code.is_some(), || format!("t = {t}: exit {code:?}"))?;
        ensure(code == Some(0), || format!("t = {t}: exit {code:?}: {}", String::from_utf8_lossy(&out.stderr)))?;
        let v: Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
        ensure(v["cross_validation"]["agree"] == true, || format!("t = {t}: no agreement"))?;
        notes.push(format!("{t}:{}", v["verdict"].as_str().unwrap_or("?")));
    }
    let (p, d) = (1, 5);
    dg_cross_validate(&q(p, d), 4, 64, 64).map_err(|e| e.to_string())?;
    Ok(notes.join(" "))
}

fn fixed_point_identity() -> Check {
    let mut notes = Vec::new();
    for t in [0.0, 0.3, 0.5] {
        let m = dg_build_float(t);
        let l = normalize_lift(&m.lift).map_err(|e| e.to_string())?;
        let fp = FixedPointDatum::from_unscaled(&l, &m.fixed_point().map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        let dev = fixed_point_check(&l, &fp, 20).map_err(|e| e.to_string())?;
        ensure(dev < 1e-7, || format!("t = {t}: deviation {dev:e} at n = 20"))?;
        let mut worst: f64 = 0.0;
        for n in 5..12 {
            let a = fixed_point_limit_deviation(&l, &fp, n).map_err(|e| e.to_string())?;
            let b = fixed_point_limit_deviation(&l, &fp, n + 1).map_err(|e| e.to_string())?;
            let ratio = b / a;
            ensure((0.4..=0.6).contains(&ratio), || format!("t = {t}: ratio {ratio} at n = {n}"))?;
            worst = worst.max((ratio - 0.5).abs());
        }
        notes.push(format!("t={t}: dev {dev:.1e}, |ratio-1/2| <= {worst:.1e}"));
    }
    Ok(notes.join("; "))
}

fn monotonicity() -> Check {
    let half = dg_build_exact(&q(1, 2), 64).map_err(|e| e.to_string())?;
    let maps = [
        ("squares", squares()),
        ("t=0.3", normalize_lift(&dg_build_float(0.3).lift).unwrap()),
        ("t=1/2", normalize_lift(&half.lift).unwrap()),
    ];
    let pts = sample_sphere(1000, 0, 3);
    let mut notes = Vec::new();
    for (name, l) in &maps {
        let v = monotonicity_check(l, &pts, 10).map_err(|e| e.to_string())?;
        ensure(v <= 1e-9, || format!("{name}: violation {v:e}"))?;
        notes.push(format!("{name}: {v:.1e}"));
    }
    Ok(notes.join(", "))
}

fn closed_forms() -> Check {
    let l = squares();
    let one = |re: f64| Complex64::new(re, 0.0);
    let a = green_eval(&l, &[one(1.0), one(0.0), one(0.0)], 2).map_err(|e| e.to_string())?.value;
    let b = green_eval(&l, &[one(0.0), one(1.0), one(1.0)], 2).map_err(|e| e.to_string())?.value;
    let (ea, eb) = (-0.75 * 2f64.ln(), -1.125 * 2f64.ln());
    ensure((a - ea).abs() < 1e-9, || format!("[1:0:0]: {a} vs {ea}"))?;
    ensure((b - eb).abs() < 1e-9, || format!("[0:1:1]: {b} vs {eb}"))?;
    Ok(format!("errors {:.1e}, {:.1e}", (a - ea).abs(), (b - eb).abs()))
}

fn mass_calibration() -> Check {
    let l = squares();
    let lines = random_lines(4, 0);
    let opts = |r| MassOptions { resolution: r, ..MassOptions::default() };
    let mut notes = Vec::new();
    for (k, line) in lines.iter().enumerate() {
        let t256 = line_mass(&l, line, 0, 1.0, &opts(256)).map_err(|e| e.to_string())?.total;
        let t512 = line_mass(&l, line, 0, 1.0, &opts(512)).map_err(|e| e.to_string())?.total;
        let (e256, e512) = ((t256 - 1.0).abs(), (t512 - 1.0).abs());
        ensure(e512 <= 0.05, || format!("line {k}: total {t512}"))?;
        ensure(e512 <= 0.7 * e256, || format!("line {k}: error {e256:e} -> {e512:e}"))?;
        let disk = disk_mass(&l, line, 0, 1.0, &opts(512)).map_err(|e| e.to_string())?;
        ensure((disk - omega_disk_mass(1.0)).abs() <= 0.03, || format!("line {k}: unit disk {disk}"))?;
        if k == 0 {
            notes.push(format!("total {t512:.5} (err {e256:.1e} -> {e512:.1e}), unit disk {disk:.5}"));
        }
    }
    Ok(notes.join(""))
}

fn lemma_illustration() -> Check {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let out = dir.path().join("lemma.csv");
    let start = Instant::now();
    let res = cli(&[
        "mass", "--t", "1/2", "--offsets", "0,0.015625,0.25", "--n", "6", "--M", "3", "--lines", "16",
        "--out", out.to_str().unwrap(),
    ]);
    let elapsed = start.elapsed();
    ensure(res.status.success(), || String::from_utf8_lossy(&res.stderr).into_owned())?;
    let text = std::fs::read_to_string(&out).map_err(|e| e.to_string())?;
    let mut lines = text.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let col = |name: &str| header.iter().position(|h| *h == name).unwrap();
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    let sub = |i: usize| rows[i][col("mean_sublevel")].parse::<f64>().unwrap();
    let bound = parse_fraction(rows[0][col("exact_bound")]);
    let (at0, near, far) = (sub(0), sub(1), sub(2));
    ensure(at0 >= bound - 0.15, || format!("sublevel {at0} vs bound {bound}"))?;
    ensure(near >= far - 0.1, || format!("offset 2^-6: {near}, offset 2^-2: {far}"))?;
    ensure(elapsed < Duration::from_secs(900), || format!("took {elapsed:?}"))?;
    Ok(format!(
        "sublevel {at0:.4} vs bound {bound:.4}; offsets 2^-6 / 2^-2: {near:.4} / {far:.4}; {:.1} s",
        elapsed.as_secs_f64()
    ))
}

fn determinism() -> Check {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let cases: [&[&str]; 6] = [
        &["degrees", "--t", "1/4", "--N", "4"],
        &["stability", "--t", "3/4", "--N", "4"],
        &["family", "--t", "2/3"],
        &["green", "--t", "0.3", "--n", "8", "--samples", "1000", "--seed", "7"],
        &["green", "--t", "1/4", "--n", "6", "--slice-base", "1,0,0", "--slice-dir", "0,1,1", "--resolution", "48"],
        &["mass", "--t", "0.5", "--offsets", "0,0.1", "--n", "4", "--lines", "4", "--resolution", "64", "--seed", "2"],
    ];
    for args in cases {
        let mut outputs = Vec::new();
        for k in 0..2 {
            let sub = dir.path().join(format!("run{k}"));
            std::fs::create_dir_all(&sub).map_err(|e| e.to_string())?;
            let path = sub.join("out.csv");
            let mut full = args.to_vec();
            full.extend(["--out", path.to_str().unwrap()]);
            let res = cli(&full);
            ensure(res.status.success(), || format!("{args:?}: {}", String::from_utf8_lossy(&res.stderr)))?;
            let mut files: Vec<(String, Vec<u8>)> = std::fs::read_dir(&sub)
                .map_err(|e| e.to_string())?
                .map(|e| {
                    let e = e.unwrap();
                    (e.file_name().to_string_lossy().into_owned(), std::fs::read(e.path()).unwrap())
                })
                .collect();
            files.sort();
            outputs.push(files);
        }
        ensure(outputs[0] == outputs[1], || format!("{args:?} differs between runs"))?;
    }
    Ok(format!("{} invocations byte-identical", cases.len()))
}

fn representative_independence() -> Check {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(10);
    let half = dg_build_exact(&q(1, 2), 64).map_err(|e| e.to_string())?;
    let maps = [squares(), normalize_lift(&dg_build_float(0.3).lift).unwrap(), normalize_lift(&half.lift).unwrap()];
    let pts = sample_sphere(100, 10, 3);
    let mut worst = 0.0f64;
    for (k, z) in pts.iter().enumerate() {
        let modulus = 10f64.powf(rng.random_range(-3.0..=3.0));
        let lambda = Complex64::from_polar(modulus, rng.random_range(0.0..std::f64::consts::TAU));
        let scaled: Vec<Complex64> = z.iter().map(|c| c * lambda).collect();
        let l = &maps[k % 3];
        let a = green_eval(l, z, 10).map_err(|e| e.to_string())?.value;
        let b = green_eval(l, &scaled, 10).map_err(|e| e.to_string())?.value;
        worst = worst.max((a - b).abs());
    }
    ensure(worst < 1e-10, || format!("difference {worst:e}"))?;
    Ok(format!("max difference {worst:.1e} over 100 pairs"))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("1 exact stability, stable case", stable_case),
        ("2 exact instability, unstable case", unstable_case),
        ("3 predicate/algebra agreement", predicate_agreement),
        ("4 fixed-point identity", fixed_point_identity),
        ("5 monotonicity", monotonicity),
        ("6 closed-form Green values", closed_forms),
        ("7 mass calibration", mass_calibration),
        ("8 technical-lemma illustration", lemma_illustration),
        ("9 determinism", determinism),
        ("10 representative independence", representative_independence),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let result = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        match result {
            Ok(detail) => println!("PASS criterion {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {name}: {why}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
