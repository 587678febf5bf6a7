//! Mass of `omega + dd^c g^(n)` on projective lines of P^2, from a discrete
//! Laplacian of the restricted potential `u = log|z| + g^(n)`.
//!
//! A line through orthonormal `p, q` is covered by the charts
//! `A: w -> p + w q` and `B: w' -> q + w' p` (`w' = 1/w`). Per-cell masses
//! in each chart are weighted by a smooth partition of unity in `log|w|`
//! centred on `|w| = split`, so their sum counts every part of the line
//! once and no cell near a chart edge is used.

use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fmath;
use crate::greenpot::{sample_sphere, NormalizedLift};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MassOptions {
    /// Grid cells per side of each chart.
    pub resolution: usize,
    /// Each chart covers `[-radius, radius]^2`.
    pub radius: f64,
    /// Charts hand over around `|w| = split`.
    pub split: f64,
    /// Half-width of the hand-over band in `log|w|`.
    pub blend: f64,
    /// `g^(n)` is clamped below at `-clip` before differencing.
    pub clip: f64,
}

impl Default for MassOptions {
    fn default() -> Self {
        MassOptions { resolution: 256, radius: 2.5, split: 1.0, blend: 0.3, clip: 40.0 }
    }
}

impl MassOptions {
    pub fn validate(&self) -> Result<()> {
        if self.resolution < 32 {
            return Err(Error::InvalidArgument("resolution must be at least 32".into()));
        }
        let h = 2.0 * self.radius / self.resolution as f64;
        let outer = self.split * fmath::exp(self.blend);
        if !(self.blend > 0.0 && self.split > 0.0 && self.clip > 0.0) {
            return Err(Error::InvalidArgument("split, blend and clip must be positive".into()));
        }
        if outer + 2.0 * h > self.radius || self.split * fmath::exp(-self.blend) < 2.0 * h {
            return Err(Error::InvalidArgument(
                "chart radius too small for the hand-over band at this resolution".into(),
            ));
        }
        Ok(())
    }
}

/// A projective line of P^2 through two points, stored orthonormalized.
#[derive(Debug, Clone, PartialEq)]
pub struct LineChart {
    pub p: [Complex64; 3],
    pub q: [Complex64; 3],
}

fn dot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

impl LineChart {
    pub fn new(p: &[Complex64], q: &[Complex64]) -> Result<Self> {
        if p.len() != 3 || q.len() != 3 {
            return Err(Error::Shape("lines are only supported in P^2".into()));
        }
        let np = fmath::vnorm(p);
        let nq = fmath::vnorm(q);
        if np == 0.0 || nq == 0.0 {
            return Err(Error::ZeroPoint);
        }
        let pu: Vec<Complex64> = p.iter().map(|z| z / np).collect();
        let proj = dot(&pu, q);
        let qperp: Vec<Complex64> = q.iter().zip(&pu).map(|(z, e)| z - proj * e).collect();
        let nperp = fmath::vnorm(&qperp);
        if nperp <= 1e-12 * nq {
            return Err(Error::InvalidArgument("points do not span a line".into()));
        }
        let arr = |v: &[Complex64], s: f64| [v[0] / s, v[1] / s, v[2] / s];
        Ok(LineChart { p: arr(&pu, 1.0), q: arr(&qperp, nperp) })
    }

    /// `p + w q`.
    pub fn point_a(&self, w: Complex64) -> [Complex64; 3] {
        [self.p[0] + w * self.q[0], self.p[1] + w * self.q[1], self.p[2] + w * self.q[2]]
    }

    /// `q + w' p`.
    pub fn point_b(&self, w: Complex64) -> [Complex64; 3] {
        [self.q[0] + w * self.p[0], self.q[1] + w * self.p[1], self.q[2] + w * self.p[2]]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Chart {
    A,
    B,
}

/// Values on the cell centres of one chart, row-major with rows by `Im w`.
#[derive(Debug, Clone, PartialEq)]
pub struct PotentialGrid {
    pub resolution: usize,
    pub radius: f64,
    /// `u = log|z| + max(g, -clip)`.
    pub u: Vec<f64>,
    /// Unclamped `g^(n)`, `-inf` on underflow.
    pub g: Vec<f64>,
    /// Cells where `g` was clamped.
    pub flagged: Vec<bool>,
}

impl PotentialGrid {
    pub fn spacing(&self) -> f64 {
        2.0 * self.radius / self.resolution as f64
    }

    pub fn center(&self, row: usize, col: usize) -> Complex64 {
        let h = self.spacing();
        Complex64::new(-self.radius + (col as f64 + 0.5) * h, -self.radius + (row as f64 + 0.5) * h)
    }

    /// `(sum of the 4 neighbours - 4 u) / (2 pi)`: the cell's mass.
    /// Edge cells have no stencil and get `0`.
    pub fn cell_mass(&self, row: usize, col: usize) -> f64 {
        let r = self.resolution;
        if row == 0 || col == 0 || row + 1 == r || col + 1 == r {
            return 0.0;
        }
        let at = |i: usize, j: usize| self.u[i * r + j];
        (at(row - 1, col) + at(row + 1, col) + at(row, col - 1) + at(row, col + 1) - 4.0 * at(row, col))
            / (2.0 * PI)
    }
}

pub fn line_restricted_potential(
    l: &NormalizedLift,
    chart: &LineChart,
    which: Chart,
    n: u32,
    opts: &MassOptions,
) -> Result<PotentialGrid> {
    if l.nvars() != 3 {
        return Err(Error::Shape("line masses need a map of P^2".into()));
    }
    let r = opts.resolution;
    let mut grid = PotentialGrid {
        resolution: r,
        radius: opts.radius,
        u: Vec::with_capacity(r * r),
        g: Vec::with_capacity(r * r),
        flagged: Vec::with_capacity(r * r),
    };
    for row in 0..r {
        for col in 0..r {
            let w = grid.center(row, col);
            let z = match which {
                Chart::A => chart.point_a(w),
                Chart::B => chart.point_b(w),
            };
            let g = l.green_value(&z, n)?;
            let flagged = !(g >= -opts.clip);
            let gc = if flagged { -opts.clip } else { g };
            grid.u.push(fmath::ln(fmath::vnorm(&z)) + gc);
            grid.g.push(g);
            grid.flagged.push(flagged);
        }
    }
    Ok(grid)
}

/// Symmetric quintic step: `0` below `-1`, `1` above `1`, `S(x) + S(-x) = 1`.
fn smoothstep(x: f64) -> f64 {
    if x <= -1.0 {
        0.0
    } else if x >= 1.0 {
        1.0
    } else {
        0.5 + (15.0 * x - 10.0 * x * x * x + 3.0 * x * x * x * x * x) / 16.0
    }
}

/// Partition-of-unity weight of chart A at `w` (chart B uses `1/w'`).
fn weight_a(w: Complex64, opts: &MassOptions) -> f64 {
    let a = fmath::cabs(w);
    if a == 0.0 {
        return 1.0;
    }
    smoothstep((fmath::ln(opts.split) - fmath::ln(a)) / opts.blend)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MassEstimate {
    pub total: f64,
    pub sublevel: f64,
    pub m: f64,
    pub resolution: usize,
    pub lines_used: usize,
}

/// Total and `{g^(n) < -M}` mass of `omega + dd^c g^(n)` on one line.
pub fn line_mass(l: &NormalizedLift, chart: &LineChart, n: u32, big_m: f64, opts: &MassOptions) -> Result<MassEstimate> {
    opts.validate()?;
    let mut total = 0.0;
    let mut sublevel = 0.0;
    for which in [Chart::A, Chart::B] {
        let grid = line_restricted_potential(l, chart, which, n, opts)?;
        let r = grid.resolution;
        for row in 1..r - 1 {
            for col in 1..r - 1 {
                let wgt = weight_a(grid.center(row, col), opts);
                let chi = match which {
                    Chart::A => wgt,
                    Chart::B => 1.0 - wgt_inverse(grid.center(row, col), opts),
                };
                if chi == 0.0 {
                    continue;
                }
                let mass = chi * grid.cell_mass(row, col);
                total += mass;
                if !(grid.g[row * r + col] >= -big_m) {
                    sublevel += mass;
                }
            }
        }
    }
    Ok(MassEstimate { total, sublevel, m: big_m, resolution: opts.resolution, lines_used: 1 })
}

/// Chart-A weight at `w = 1/w'`.
fn wgt_inverse(w_prime: Complex64, opts: &MassOptions) -> f64 {
    let a = fmath::cabs(w_prime);
    if a == 0.0 {
        return 0.0;
    }
    smoothstep((fmath::ln(opts.split) + fmath::ln(a)) / opts.blend)
}

/// Mass of the chart-A disk `|w| < r`, counting cells whose centre is
/// inside.
pub fn disk_mass(l: &NormalizedLift, chart: &LineChart, n: u32, r: f64, opts: &MassOptions) -> Result<f64> {
    opts.validate()?;
    if !(r > 0.0) || r + 2.0 * (2.0 * opts.radius / opts.resolution as f64) > opts.radius {
        return Err(Error::InvalidArgument("disk must fit inside the chart".into()));
    }
    let grid = line_restricted_potential(l, chart, Chart::A, n, opts)?;
    let res = grid.resolution;
    let mut mass = 0.0;
    for row in 1..res - 1 {
        for col in 1..res - 1 {
            if fmath::cabs(grid.center(row, col)) < r {
                mass += grid.cell_mass(row, col);
            }
        }
    }
    Ok(mass)
}

/// `r^2 / (1 + r^2)`: Fubini-Study mass of `|w| < r` in an orthonormal chart.
pub fn omega_disk_mass(r: f64) -> f64 {
    r * r / (1.0 + r * r)
}

/// Largest `|u_B(1/w) - log|1/w| - u_A(w)|` over `count` points of the
/// overlap annulus `1/2 <= |w| <= 2`.
pub fn overlap_discrepancy(l: &NormalizedLift, chart: &LineChart, n: u32, count: usize) -> Result<f64> {
    let mut worst = 0.0f64;
    for k in 0..count {
        let rad = 0.5 * fmath::pow(4.0, k as f64 / count.max(1) as f64);
        let w = Complex64::from_polar(rad, 2.399963229728653 * k as f64);
        let za = chart.point_a(w);
        let wp = w.inv();
        let zb = chart.point_b(wp);
        let ua = fmath::ln(fmath::vnorm(&za)) + l.green_value(&za, n)?;
        let ub = fmath::ln(fmath::vnorm(&zb)) + l.green_value(&zb, n)?;
        worst = worst.max((ub - fmath::ln(fmath::cabs(wp)) - ua).abs());
    }
    Ok(worst)
}

/// `count` Fubini-Study-random lines, deterministic in `seed`.
pub fn random_lines(count: usize, seed: u64) -> Vec<LineChart> {
    let pts = sample_sphere(2 * count, seed, 3);
    pts.chunks(2)
        .filter_map(|pair| LineChart::new(&pair[0], &pair[1]).ok())
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepTask {
    pub t_index: usize,
    pub t: f64,
    pub offset: f64,
    pub line: LineChart,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub t: f64,
    pub offset: f64,
    pub n: u32,
    pub m: f64,
    pub lines: usize,
    pub mean_sublevel: f64,
    pub mean_total: f64,
}

/// One task per `(t, line)`, `t = t_star + offset`; all parameters share
/// the same lines.
pub fn sweep_plan(t_star: f64, offsets: &[f64], lines: usize, seed: u64) -> Vec<SweepTask> {
    let charts = random_lines(lines, seed);
    let mut plan = Vec::with_capacity(offsets.len() * charts.len());
    for (i, &off) in offsets.iter().enumerate() {
        for c in &charts {
            plan.push(SweepTask { t_index: i, t: t_star + off, offset: off, line: c.clone() });
        }
    }
    plan
}

/// Averages per-task estimates (in plan order) into one row per offset.
pub fn summarize_sweep(plan: &[SweepTask], results: &[MassEstimate], n: u32, big_m: f64, offsets: &[f64]) -> Vec<SweepRow> {
    let mut rows: Vec<SweepRow> = offsets
        .iter()
        .map(|&off| SweepRow { t: 0.0, offset: off, n, m: big_m, lines: 0, mean_sublevel: 0.0, mean_total: 0.0 })
        .collect();
    for (task, est) in plan.iter().zip(results) {
        let row = &mut rows[task.t_index];
        row.t = task.t;
        row.lines += 1;
        row.mean_sublevel += est.sublevel;
        row.mean_total += est.total;
    }
    for row in &mut rows {
        if row.lines > 0 {
            row.mean_sublevel /= row.lines as f64;
            row.mean_total /= row.lines as f64;
        }
    }
    rows
}

/// Mean sublevel and total line masses for `t = t_star + offset`, averaged
/// over `lines` random lines.
#[allow(clippy::too_many_arguments)]
pub fn lemma_sweep(
    family: impl Fn(f64) -> Result<NormalizedLift>,
    t_star: f64,
    offsets: &[f64],
    n: u32,
    big_m: f64,
    lines: usize,
    seed: u64,
    opts: &MassOptions,
) -> Result<Vec<SweepRow>> {
    let plan = sweep_plan(t_star, offsets, lines, seed);
    let lifts = offsets.iter().map(|o| family(t_star + o)).collect::<Result<Vec<_>>>()?;
    let results = plan
        .iter()
        .map(|task| line_mass(&lifts[task.t_index], &task.line, n, big_m, opts))
        .collect::<Result<Vec<_>>>()?;
    Ok(summarize_sweep(&plan, &results, n, big_m, offsets))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{HomPoly, PolyMap, Rational};
    use crate::greenpot::normalize_lift;

    fn squares() -> NormalizedLift {
        let v = |i| HomPoly::<Rational>::var(i, 3).pow(2);
        normalize_lift(&PolyMap::new(vec![v(0), v(1), v(2)]).unwrap()).unwrap()
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn partition_of_unity() {
        let o = MassOptions { split: 1.5, ..MassOptions::default() };
        for k in 0..50 {
            let w = Complex64::from_polar(0.2 + 0.05 * k as f64, 0.7 * k as f64);
            let chi_a = weight_a(w, &o);
            let chi_b = 1.0 - wgt_inverse(w.inv(), &o);
            assert!((chi_a + chi_b - 1.0).abs() < 1e-12);
            assert!((0.0..=1.0).contains(&chi_a));
        }
        assert_eq!(weight_a(c(0.5, 0.0), &o), 1.0);
        assert_eq!(weight_a(c(3.0, 0.0), &o), 0.0);
        assert_eq!(smoothstep(0.0), 0.5);
        assert!((smoothstep(0.3) + smoothstep(-0.3) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn orthonormal_chart() {
        let ch = LineChart::new(&[c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)], &[c(0.0, 0.0), c(1.0, 1.0), c(0.0, 2.0)]).unwrap();
        assert!((fmath::vnorm(&ch.p) - 1.0).abs() < 1e-15);
        assert!((fmath::vnorm(&ch.q) - 1.0).abs() < 1e-15);
        assert!(dot(&ch.p, &ch.q).norm() < 1e-15);
        assert!(LineChart::new(&[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)], &[c(0.0, 2.0), c(0.0, 0.0), c(0.0, 0.0)]).is_err());
    }

    #[test]
    fn pure_omega_calibration_small() {
        let l = squares();
        let ch = &random_lines(1, 5)[0];
        let o = MassOptions { resolution: 128, ..MassOptions::default() };
        let est = line_mass(&l, ch, 0, 1.0, &o).unwrap();
        assert!((est.total - 1.0).abs() < 0.05, "{}", est.total);
        assert_eq!(est.sublevel, 0.0);
        let disk = disk_mass(&l, ch, 0, 1.0, &o).unwrap();
        assert!((disk - 0.5).abs() < 0.03, "{disk}");
    }

    #[test]
    fn overlap_values_agree() {
        let l = squares();
        for ch in random_lines(3, 9) {
            assert!(overlap_discrepancy(&l, &ch, 4, 40).unwrap() < 1e-8);
        }
    }

    #[test]
    fn options_are_checked() {
        let o = MassOptions { radius: 1.2, ..MassOptions::default() };
        assert!(o.validate().is_err());
        assert!(MassOptions { resolution: 16, ..MassOptions::default() }.validate().is_err());
        MassOptions::default().validate().unwrap();
    }
}
