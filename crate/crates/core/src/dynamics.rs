//! Iterates of a lift with common-factor extraction, degree sequences and
//! the exact polar-mass lower bounds `1 - deg f^n / d^n`.

use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::exactalg::{map_content, poly_compose, poly_divide_exact, HomPoly, PolyMap, Rational, Scalar};
use crate::fmath;

/// `F^n = H_n * F_red_n` with `F_red_n` free of common factors.
#[derive(Debug, Clone, PartialEq)]
pub struct IterateFactorization<C> {
    pub n: u32,
    pub h: HomPoly<C>,
    pub f_red: PolyMap<C>,
    pub deg_fn: u32,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReportRow {
    pub n: u32,
    pub deg_fn: u32,
    pub deg_hn: u32,
    pub mass_lower_bound: Rational,
    pub stable_so_far: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct IterateReport {
    pub d: u32,
    pub rows: Vec<ReportRow>,
}

impl IterateReport {
    /// First `n` with `deg f^n < d^n`.
    pub fn first_drop(&self) -> Option<u32> {
        self.rows.iter().find(|r| !r.stable_so_far).map(|r| r.n)
    }
}

fn check_cap(d: u32, n: u32, cap: u64) -> Result<()> {
    let degree = (d as u64).checked_pow(n).unwrap_or(u64::MAX);
    if degree > cap {
        return Err(Error::DegreeCapExceeded { degree, cap });
    }
    Ok(())
}

/// Iterator over the factorizations of `F^1, F^2, ...`, each step composing
/// `F` with the previous reduced iterate and extracting its content.
pub struct Iterates<'a, C> {
    f: &'a PolyMap<C>,
    cap: u64,
    prev: Option<IterateFactorization<C>>,
    failed: bool,
}

pub fn iterates<C: Scalar>(f: &PolyMap<C>, degree_cap: u64) -> Iterates<'_, C> {
    Iterates { f, cap: degree_cap, prev: None, failed: false }
}

impl<C: Scalar> Iterates<'_, C> {
    fn step(&self) -> Result<IterateFactorization<C>> {
        let d = self.f.degree();
        let n = self.prev.as_ref().map_or(1, |p| p.n + 1);
        check_cap(d, n, self.cap)?;
        let (h_prev, raw) = match &self.prev {
            None => (HomPoly::one(self.f.nvars()), self.f.clone()),
            Some(p) => (p.h.pow(d), poly_compose(self.f, &p.f_red)?),
        };
        let e = map_content(&raw)?;
        let f_red = raw.divide_by(&e)?;
        for (r, c) in raw.components().iter().zip(f_red.components()) {
            if e.mul(c) != *r {
                return Err(Error::Verification(format!("content times reduced lift differs from F^{n}")));
            }
        }
        let h = h_prev.mul(&e).monic();
        let deg_fn = f_red.degree();
        if h.degree() + deg_fn != d.pow(n) {
            return Err(Error::Verification(format!("degrees of H_{n} and F_red_{n} do not add up")));
        }
        Ok(IterateFactorization { n, h, f_red, deg_fn })
    }
}

impl<C: Scalar> Iterator for Iterates<'_, C> {
    type Item = Result<IterateFactorization<C>>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.failed {
            return None;
        }
        let out = self.step();
        match &out {
            Ok(fac) => self.prev = Some(fac.clone()),
            Err(_) => self.failed = true,
        }
        Some(out)
    }
}

/// Factorization of the `n`-th iterate, `n >= 1`.
pub fn iterate_factor<C: Scalar>(f: &PolyMap<C>, n: u32, degree_cap: u64) -> Result<IterateFactorization<C>> {
    if n == 0 {
        return Err(Error::InvalidArgument("iterate index must be positive".into()));
    }
    check_cap(f.degree(), n, degree_cap)?;
    let mut last = None;
    for fac in iterates(f, degree_cap).take(n as usize) {
        last = Some(fac?);
    }
    Ok(last.expect("n >= 1"))
}

/// Factorizations for `n = 1..=big_n`.
pub fn iterate_all<C: Scalar>(f: &PolyMap<C>, big_n: u32, degree_cap: u64) -> Result<Vec<IterateFactorization<C>>> {
    check_cap(f.degree(), big_n, degree_cap)?;
    iterates(f, degree_cap).take(big_n as usize).collect()
}

/// Report rows from precomputed factorizations of `F^1..F^N`.
pub fn report_from<C: Scalar>(d: u32, facs: &[IterateFactorization<C>]) -> Result<IterateReport> {
    let mut rows: Vec<ReportRow> = Vec::with_capacity(facs.len());
    let mut stable = true;
    for fac in facs {
        let full = d.pow(fac.n);
        stable &= fac.deg_fn == full;
        let bound = Rational::from_i64(1)
            - Rational::new(BigInt::from(fac.deg_fn), BigInt::from(full));
        if let Some(prev) = rows.last() {
            if bound < prev.mass_lower_bound {
                return Err(Error::Verification(format!("mass bound decreased at n = {}", fac.n)));
            }
        }
        rows.push(ReportRow {
            n: fac.n,
            deg_fn: fac.deg_fn,
            deg_hn: fac.h.degree(),
            mass_lower_bound: bound,
            stable_so_far: stable,
        });
    }
    Ok(IterateReport { d, rows })
}

pub fn degree_sequence<C: Scalar>(f: &PolyMap<C>, big_n: u32, degree_cap: u64) -> Result<IterateReport> {
    report_from(f.degree(), &iterate_all(f, big_n, degree_cap)?)
}

/// Whether `H_n^(d^m)` divides `H_(n+m)`.
pub fn check_factor_divisibility<C: Scalar>(
    fac_n: &IterateFactorization<C>,
    fac_nm: &IterateFactorization<C>,
    d: u32,
    m: u32,
) -> Result<bool> {
    if fac_nm.n != fac_n.n + m {
        return Err(Error::InvalidArgument(format!(
            "expected iterate {} but got {}",
            fac_n.n + m,
            fac_nm.n
        )));
    }
    let p = fac_n.h.pow(d.pow(m));
    match poly_divide_exact(&fac_nm.h, &p) {
        Ok(_) => Ok(true),
        Err(Error::NotExactDivision { .. }) => Ok(false),
        Err(e) => Err(e),
    }
}

/// Whether the point is a common zero of the components. Exact domains
/// test exactly; the float domain compares the largest component modulus
/// at the unit-norm representative with `tol`.
pub fn indeterminacy_membership<C: Scalar>(f_red: &PolyMap<C>, point: &[C], tol: f64) -> Result<bool> {
    if point.len() != f_red.nvars() {
        return Err(Error::Shape(format!("point has {} coordinates, map has {}", point.len(), f_red.nvars())));
    }
    if point.iter().all(Scalar::is_zero) {
        return Err(Error::ZeroPoint);
    }
    if C::EXACT {
        return Ok(f_red.eval(point).iter().all(Scalar::is_zero));
    }
    let z: Vec<Complex64> = point.iter().map(Scalar::to_complex).collect();
    let norm = fmath::vnorm(&z);
    let unit: Vec<Complex64> = z.iter().map(|c| c / norm).collect();
    let worst = f_red
        .embed()
        .eval(&unit)
        .iter()
        .map(|c| fmath::cabs(*c))
        .fold(0.0, f64::max);
    Ok(worst < tol)
}

/// Largest relative error `|H(z) F_red(z) - F^n(z)| / |F^n(z)|` over the
/// points, with `F^n(z)` evaluated by iterating the float lift directly.
pub fn float_cross_check<C: Scalar>(f: &PolyMap<C>, fac: &IterateFactorization<C>, points: &[Vec<Complex64>]) -> f64 {
    let fe = f.embed();
    let he = fac.h.embed();
    let re = fac.f_red.embed();
    let mut worst = 0.0f64;
    for z in points {
        let mut direct = z.clone();
        for _ in 0..fac.n {
            direct = fe.eval(&direct);
        }
        let hz = he.eval(z);
        let diff: Vec<Complex64> = re.eval(z).iter().zip(&direct).map(|(r, w)| hz * r - w).collect();
        let scale = fmath::vnorm(&direct);
        let err = if scale > 0.0 { fmath::vnorm(&diff) / scale } else { fmath::vnorm(&diff) };
        worst = worst.max(err);
    }
    worst
}
