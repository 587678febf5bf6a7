//! Double-precision Green potentials
//! `g^(n) = sum_{m<n} d^-(m+1) log |F_C(w_m)|` along the renormalized orbit
//! `w_{m+1} = F_C(w_m) / |F_C(w_m)|` of a unit representative.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::exactalg::{PolyMap, Scalar};
use crate::fmath;

/// Below this norm an orbit step counts as landing on the indeterminacy
/// locus and the potential is reported as `-inf`.
pub const UNDERFLOW: f64 = 1e-300;

/// Lift scaled by `C = 1/(2B)`, `B` the largest coefficient-modulus sum
/// among the unscaled components, so that `|F_C(z)| <= 1/2` on the unit
/// sphere.
#[derive(Debug, Clone)]
pub struct NormalizedLift {
    pub f_c: PolyMap<Complex64>,
    pub c: f64,
    pub b: f64,
    eval: FlatMap,
}

/// Components as flat `(coefficient, exponents)` lists for fast evaluation.
#[derive(Debug, Clone)]
struct FlatMap {
    nvars: usize,
    d: u32,
    // per component: range into `coeffs`
    spans: Vec<(usize, usize)>,
    coeffs: Vec<Complex64>,
    exps: Vec<u32>,
}

impl FlatMap {
    fn new(f: &PolyMap<Complex64>) -> Self {
        let nvars = f.nvars();
        let mut spans = Vec::new();
        let mut coeffs = Vec::new();
        let mut exps = Vec::new();
        for comp in f.components() {
            let start = coeffs.len();
            for (m, c) in comp.poly().terms() {
                coeffs.push(*c);
                exps.extend_from_slice(m.exps());
            }
            spans.push((start, coeffs.len()));
        }
        FlatMap { nvars, d: f.degree(), spans, coeffs, exps }
    }

    /// `out = F(z)`; `pw` is scratch of length `nvars * (d + 1)`.
    fn eval_into(&self, z: &[Complex64], out: &mut [Complex64], pw: &mut [Complex64]) {
        let stride = self.d as usize + 1;
        for (j, zj) in z.iter().enumerate() {
            let row = &mut pw[j * stride..(j + 1) * stride];
            row[0] = Complex64::new(1.0, 0.0);
            for e in 1..stride {
                row[e] = row[e - 1] * zj;
            }
        }
        for (i, &(lo, hi)) in self.spans.iter().enumerate() {
            let mut acc = Complex64::new(0.0, 0.0);
            for t in lo..hi {
                let mut term = self.coeffs[t];
                for j in 0..self.nvars {
                    let e = self.exps[t * self.nvars + j] as usize;
                    if e > 0 {
                        term *= pw[j * stride + e];
                    }
                }
                acc += term;
            }
            out[i] = acc;
        }
    }
}

pub fn normalize_lift<C: Scalar>(f: &PolyMap<C>) -> Result<NormalizedLift> {
    let fe = f.embed();
    let b = fe
        .components()
        .iter()
        .map(|c| c.coeff_modulus_sum())
        .fold(0.0, f64::max);
    if !(b > 0.0) || !b.is_finite() {
        return Err(Error::ZeroMap);
    }
    let c = 1.0 / (2.0 * b);
    let f_c = fe.scale(&Complex64::new(c, 0.0));
    let eval = FlatMap::new(&f_c);
    Ok(NormalizedLift { f_c, c, b, eval })
}

impl NormalizedLift {
    pub fn nvars(&self) -> usize {
        self.eval.nvars
    }

    pub fn degree(&self) -> u32 {
        self.eval.d
    }

    pub fn apply(&self, z: &[Complex64]) -> Vec<Complex64> {
        let mut out = vec![Complex64::new(0.0, 0.0); self.nvars()];
        let mut pw = vec![Complex64::new(0.0, 0.0); self.nvars() * (self.degree() as usize + 1)];
        self.eval.eval_into(z, &mut out, &mut pw);
        out
    }

    fn check_point(&self, z: &[Complex64]) -> Result<f64> {
        if z.len() != self.nvars() {
            return Err(Error::Shape(alloc::format!(
                "point has {} coordinates, map has {}",
                z.len(),
                self.nvars()
            )));
        }
        let norm = fmath::vnorm(z);
        if norm == 0.0 {
            return Err(Error::ZeroPoint);
        }
        if !norm.is_finite() {
            return Err(Error::InvalidArgument("point has non-finite coordinates".into()));
        }
        Ok(norm)
    }

    /// Runs the orbit, handing each step log to `visit`. Returns the step
    /// index at which the orbit underflowed, if any.
    fn orbit(&self, z: &[Complex64], n: u32, norm: f64, mut visit: impl FnMut(f64)) -> Option<u32> {
        let k = self.nvars();
        let mut w: Vec<Complex64> = z.iter().map(|c| c / norm).collect();
        let mut next = vec![Complex64::new(0.0, 0.0); k];
        let mut pw = vec![Complex64::new(0.0, 0.0); k * (self.degree() as usize + 1)];
        for m in 0..n {
            self.eval.eval_into(&w, &mut next, &mut pw);
            let s = fmath::vnorm(&next);
            if !(s >= UNDERFLOW) {
                return Some(m);
            }
            visit(fmath::ln(s));
            for (wi, ni) in w.iter_mut().zip(&next) {
                *wi = ni / s;
            }
        }
        None
    }

    /// `g^(n)` alone, `-inf` on underflow.
    pub fn green_value(&self, z: &[Complex64], n: u32) -> Result<f64> {
        let norm = self.check_point(z)?;
        let d = self.degree() as f64;
        let mut weight = 1.0;
        let mut value = 0.0;
        let under = self.orbit(z, n, norm, |s| {
            weight /= d;
            value += weight * s;
        });
        Ok(if under.is_some() { f64::NEG_INFINITY } else { value })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GreenSample {
    /// Unit representative of the input point.
    pub point: Vec<Complex64>,
    pub n: u32,
    pub value: f64,
    pub step_logs: Vec<f64>,
    /// Step at which `|F_C(w_m)|` fell below [`UNDERFLOW`].
    pub underflow_step: Option<u32>,
}

pub fn green_eval(l: &NormalizedLift, z: &[Complex64], n: u32) -> Result<GreenSample> {
    let norm = l.check_point(z)?;
    let d = l.degree() as f64;
    let mut step_logs = Vec::with_capacity(n as usize);
    let under = l.orbit(z, n, norm, |s| step_logs.push(s));
    let value = if under.is_some() {
        f64::NEG_INFINITY
    } else {
        let mut weight = 1.0;
        step_logs.iter().fold(0.0, |acc, s| {
            weight /= d;
            acc + weight * s
        })
    };
    Ok(GreenSample {
        point: z.iter().map(|c| c / norm).collect(),
        n,
        value,
        step_logs,
        underflow_step: under,
    })
}

/// A fixed point `z0` of the normalized lift.
#[derive(Debug, Clone, PartialEq)]
pub struct FixedPointDatum {
    pub z0: Vec<Complex64>,
    pub x0: Vec<Complex64>,
    pub expected_g: f64,
}

impl FixedPointDatum {
    pub fn new(l: &NormalizedLift, z0: Vec<Complex64>) -> Result<Self> {
        let norm = l.check_point(&z0)?;
        let img = l.apply(&z0);
        let diff: Vec<Complex64> = img.iter().zip(&z0).map(|(a, b)| a - b).collect();
        let rel = fmath::vnorm(&diff) / norm;
        if !(rel < 1e-9) {
            return Err(Error::Verification(alloc::format!(
                "not a fixed point of the normalized lift (relative residual {rel:e})"
            )));
        }
        let x0 = z0.iter().map(|c| c / norm).collect();
        Ok(FixedPointDatum { z0, x0, expected_g: -fmath::ln(norm) })
    }

    /// From a fixed point `z` of the unscaled lift: `z C^{-1/(d-1)}` is fixed
    /// by `F_C`.
    pub fn from_unscaled(l: &NormalizedLift, z: &[Complex64]) -> Result<Self> {
        let d = l.degree();
        if d < 2 {
            return Err(Error::InvalidArgument("fixed-point rescaling needs degree at least 2".into()));
        }
        let lambda = fmath::pow(l.c, -1.0 / (d as f64 - 1.0));
        Self::new(l, z.iter().map(|c| c * lambda).collect())
    }
}

/// `|g^(n)(x0) - (1 - d^-n)(-log |z0|)|`.
pub fn fixed_point_check(l: &NormalizedLift, fp: &FixedPointDatum, n: u32) -> Result<f64> {
    let g = green_eval(l, &fp.z0, n)?.value;
    let partial = 1.0 - fmath::pow(l.degree() as f64, -(n as f64));
    Ok((g - partial * fp.expected_g).abs())
}

/// `|g^(n)(x0) + log |z0||`, which decays like `d^-n`.
pub fn fixed_point_limit_deviation(l: &NormalizedLift, fp: &FixedPointDatum, n: u32) -> Result<f64> {
    Ok((green_eval(l, &fp.z0, n)?.value - fp.expected_g).abs())
}

/// Largest `g^(m+1) - g^(m)` over the points and `m < n`, each `g^(m)`
/// from its own evaluation; `0` when nothing increases.
pub fn monotonicity_check(l: &NormalizedLift, points: &[Vec<Complex64>], n: u32) -> Result<f64> {
    let mut worst = 0.0f64;
    for z in points {
        let mut prev = l.green_value(z, 0)?;
        for m in 1..=n {
            let cur = l.green_value(z, m)?;
            if cur.is_finite() && prev.is_finite() {
                worst = worst.max(cur - prev);
            } else if cur.is_finite() {
                // -inf followed by a finite value
                worst = f64::INFINITY;
            }
            prev = cur;
        }
    }
    Ok(worst)
}

/// Fubini-Study-uniform points of `P^{nvars-1}` as unit vectors: normalized
/// standard complex Gaussians.
pub fn sample_sphere(count: usize, seed: u64, nvars: usize) -> Vec<Vec<Complex64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| loop {
            let v: Vec<Complex64> = (0..nvars)
                .map(|_| {
                    let re: f64 = StandardNormal.sample(&mut rng);
                    let im: f64 = StandardNormal.sample(&mut rng);
                    Complex64::new(re, im)
                })
                .collect();
            let norm = fmath::vnorm(&v);
            if norm > 0.0 {
                break v.iter().map(|c| c / norm).collect();
            }
        })
        .collect()
}

/// Fraction of `count` sampled points with `g^(n) < -M`.
pub fn sublevel_fraction(l: &NormalizedLift, n: u32, big_m: f64, count: usize, seed: u64) -> Result<f64> {
    if count == 0 {
        return Err(Error::InvalidArgument("count must be positive".into()));
    }
    let pts = sample_sphere(count, seed, l.nvars());
    let mut below = 0usize;
    for p in &pts {
        if l.green_value(p, n)? < -big_m {
            below += 1;
        }
    }
    Ok(below as f64 / count as f64)
}

/// `g^(n)` on the slice `z = base + (u + i v) dir`, `u, v` on a `res x res`
/// grid of cell centers in `[-half_width, half_width]^2`, rows by `v`.
pub fn slice_grid(
    l: &NormalizedLift,
    base: &[Complex64],
    dir: &[Complex64],
    half_width: f64,
    res: usize,
    n: u32,
) -> Result<Vec<f64>> {
    let mut out = Vec::with_capacity(res * res);
    for row in 0..res {
        out.extend(slice_row(l, base, dir, half_width, res, row, n)?);
    }
    Ok(out)
}

/// Row `row` of [`slice_grid`]. Points where the slice passes through the
/// origin of `C^{k+1}` get `-inf`.
pub fn slice_row(
    l: &NormalizedLift,
    base: &[Complex64],
    dir: &[Complex64],
    half_width: f64,
    res: usize,
    row: usize,
    n: u32,
) -> Result<Vec<f64>> {
    if base.len() != l.nvars() || dir.len() != l.nvars() {
        return Err(Error::Shape("slice vectors must match the number of variables".into()));
    }
    let h = 2.0 * half_width / res as f64;
    let v = -half_width + (row as f64 + 0.5) * h;
    (0..res)
        .map(|col| {
            let u = -half_width + (col as f64 + 0.5) * h;
            let s = Complex64::new(u, v);
            let z: Vec<Complex64> = base.iter().zip(dir).map(|(b, d)| b + s * d).collect();
            match l.green_value(&z, n) {
                Err(Error::ZeroPoint) => Ok(f64::NEG_INFINITY),
                other => other,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{HomPoly, Rational};

    fn squares(lead: i64) -> PolyMap<Rational> {
        let v = |i| HomPoly::<Rational>::var(i, 3).pow(2);
        PolyMap::new(vec![v(0).scale(&Rational::from_i64(lead)), v(1), v(2)]).unwrap()
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn normalization_constants() {
        let l = normalize_lift(&squares(1)).unwrap();
        assert_eq!((l.b, l.c), (1.0, 0.5));
        let l2 = normalize_lift(&squares(2)).unwrap();
        assert_eq!((l2.b, l2.c), (2.0, 0.25));
    }

    #[test]
    fn closed_forms_for_squares() {
        let l = normalize_lift(&squares(1)).unwrap();
        let ln2 = core::f64::consts::LN_2;
        let g = green_eval(&l, &[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)], 2).unwrap();
        assert!((g.value + 0.75 * ln2).abs() < 1e-14);
        let g = green_eval(&l, &[c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0)], 2).unwrap();
        assert!((g.value + 1.125 * ln2).abs() < 1e-14);
        let g = green_eval(&l, &[c(0.3, 0.0), c(1.0, 2.0), c(1.0, 0.0)], 0).unwrap();
        assert_eq!(g.value, 0.0);
    }

    #[test]
    fn fixed_point_of_squares() {
        let l = normalize_lift(&squares(1)).unwrap();
        let fp = FixedPointDatum::new(&l, vec![c(2.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]).unwrap();
        for n in [0, 1, 5, 20] {
            assert!(fixed_point_check(&l, &fp, n).unwrap() < 1e-10);
        }
        assert_eq!(fixed_point_check(&l, &fp, 0).unwrap(), 0.0);
        assert!(FixedPointDatum::new(&l, vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]).is_err());
    }

    #[test]
    fn underflow_reports_neg_inf() {
        let v = |i| HomPoly::<Rational>::var(i, 3);
        let f = PolyMap::new(vec![v(0).mul(&v(1)), v(0).mul(&v(2)), v(0).pow(2)]).unwrap();
        let l = normalize_lift(&f).unwrap();
        let g = green_eval(&l, &[c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)], 3).unwrap();
        assert_eq!(g.value, f64::NEG_INFINITY);
        assert_eq!(g.underflow_step, Some(0));
        assert!(green_eval(&l, &[c(0.0, 0.0); 3], 1).is_err());
    }

    #[test]
    fn sampling_is_seeded_and_unit() {
        let a = sample_sphere(3, 11, 3);
        assert_eq!(a, sample_sphere(3, 11, 3));
        assert_ne!(a, sample_sphere(3, 12, 3));
        for p in &a {
            assert!((fmath::vnorm(p) - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn squares_decrease_at_fixed_point() {
        let l = normalize_lift(&squares(1)).unwrap();
        let ln2 = core::f64::consts::LN_2;
        let p = [c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)];
        for n in 0..8 {
            let step = l.green_value(&p, n + 1).unwrap() - l.green_value(&p, n).unwrap();
            assert!((step + ln2 / f64::from(2u32.pow(n + 1))).abs() < 1e-15);
        }
        assert_eq!(monotonicity_check(&l, &[p.to_vec()], 0).unwrap(), 0.0);
    }
}
