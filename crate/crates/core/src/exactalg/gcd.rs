//! Exact GCD, content and exact division of homogeneous polynomials.
//!
//! Homogeneous inputs are dehomogenized at `x0 = 1` after splitting off the
//! common power of `x0`. The affine GCD recurses on the last variable
//! (univariate over the ring in the remaining variables) with a primitive
//! Euclidean remainder sequence. In two affine variables a dense
//! evaluation/interpolation route is tried first; its candidate is accepted
//! only after exact trial division of both inputs, so the answer never
//! depends on the choice of evaluation points.

use alloc::vec::Vec;

use super::hompoly::{HomPoly, PolyMap};
use super::mpoly::{MPoly, Monomial};
use super::scalar::Scalar;
use super::text::hompoly_to_text;
use super::unipoly::UniPoly;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GcdStrategy {
    /// Interpolation in two affine variables, remainder sequences elsewhere.
    Auto,
    /// Primitive remainder sequences only.
    RemainderSequence,
}

/// Graded-lex monic GCD of two homogeneous polynomials.
pub fn poly_gcd<C: Scalar>(p: &HomPoly<C>, q: &HomPoly<C>) -> Result<HomPoly<C>> {
    poly_gcd_with(p, q, GcdStrategy::Auto)
}

pub fn poly_gcd_with<C: Scalar>(
    p: &HomPoly<C>,
    q: &HomPoly<C>,
    strategy: GcdStrategy,
) -> Result<HomPoly<C>> {
    if !C::EXACT {
        return Err(Error::ExactDomainRequired);
    }
    if p.nvars() != q.nvars() {
        return Err(Error::Shape("gcd operands have different variable counts".into()));
    }
    match (p.is_zero(), q.is_zero()) {
        (true, true) => return Err(Error::InvalidArgument("gcd(0, 0) is undefined".into())),
        (true, false) => return Ok(q.monic()),
        (false, true) => return Ok(p.monic()),
        _ => {}
    }
    let n = p.nvars();
    let shift = p.poly().valuation_in(0).min(q.poly().valuation_in(0));
    let x0_power = HomPoly::var(0, n).pow(shift);
    if n == 1 {
        return Ok(x0_power);
    }
    let affine = |h: &HomPoly<C>| {
        let v = h.poly().valuation_in(0);
        strip_x0(h.poly(), v).substitute(0, &C::one()).remove_var(0)
    };
    let g = gcd_rec(&affine(p), &affine(q), n - 1, strategy);
    let e = g.total_degree().unwrap_or(0);
    let gh = HomPoly::new(g.insert_var(0).homogenize(0, e), e)?;
    Ok(gh.mul(&x0_power).monic())
}

fn strip_x0<C: Scalar>(p: &MPoly<C>, v: u32) -> MPoly<C> {
    if v == 0 {
        return p.clone();
    }
    MPoly::from_terms(
        p.nvars(),
        p.terms().map(|(m, c)| {
            let mut e = m.exps().to_vec();
            e[0] -= v;
            (Monomial::new(e), c.clone())
        }),
    )
}

/// GCD of all components of a map, graded-lex monic.
pub fn map_content<C: Scalar>(f: &PolyMap<C>) -> Result<HomPoly<C>> {
    if !C::EXACT {
        return Err(Error::ExactDomainRequired);
    }
    let mut comps: Vec<&HomPoly<C>> = f.components().iter().filter(|c| !c.is_zero()).collect();
    comps.sort_by_key(|c| c.num_terms());
    let mut g = comps[0].monic();
    for c in &comps[1..] {
        if g.degree() == 0 {
            break;
        }
        g = poly_gcd(&g, c)?;
    }
    Ok(g)
}

/// `p / divisor`, failing with the remainder when the division is not exact.
pub fn poly_divide_exact<C: Scalar>(p: &HomPoly<C>, divisor: &HomPoly<C>) -> Result<HomPoly<C>> {
    if !C::EXACT {
        return Err(Error::ExactDomainRequired);
    }
    if divisor.is_zero() {
        return Err(Error::DivisionByZero);
    }
    if p.nvars() != divisor.nvars() {
        return Err(Error::Shape("division operands have different variable counts".into()));
    }
    let deg = p.degree().checked_sub(divisor.degree());
    match (p.poly().div_exact(divisor.poly()), deg) {
        (Ok(q), Some(d)) => HomPoly::new(q, d),
        (Ok(_), None) => Err(Error::NotExactDivision { remainder: hompoly_to_text(p) }),
        (Err(r), _) => Err(Error::NotExactDivision {
            remainder: hompoly_to_text(&HomPoly::new(r, p.degree())?),
        }),
    }
}

/// Affine GCD of polynomials involving only variables `0..active`.
fn gcd_rec<C: Scalar>(p: &MPoly<C>, q: &MPoly<C>, active: usize, strategy: GcdStrategy) -> MPoly<C> {
    let n = p.nvars();
    if p.is_zero() {
        return q.monic();
    }
    if q.is_zero() {
        return p.monic();
    }
    if active == 0 || p.is_constant() || q.is_constant() {
        return MPoly::one(n);
    }
    if active == 1 {
        let g = p.as_unipoly(0).gcd(&q.as_unipoly(0));
        return MPoly::from_unipoly(&g, 0, n);
    }
    if strategy == GcdStrategy::Auto && active == 2 {
        if let Some(g) = gcd_interp(p, q) {
            return g;
        }
    }
    gcd_prs(p, q, active, strategy)
}

fn content<C: Scalar>(p: &MPoly<C>, var: usize, active: usize, strategy: GcdStrategy) -> MPoly<C> {
    let mut coeffs: Vec<MPoly<C>> = p.to_univariate(var).into_iter().filter(|c| !c.is_zero()).collect();
    coeffs.sort_by_key(|c| c.num_terms());
    let mut g = coeffs[0].monic();
    for c in &coeffs[1..] {
        if g.is_constant() {
            break;
        }
        g = gcd_rec(&g, c, active - 1, strategy);
    }
    g
}

fn primitive_part<C: Scalar>(p: &MPoly<C>, var: usize, active: usize, strategy: GcdStrategy) -> MPoly<C> {
    let c = content(p, var, active, strategy);
    if c.is_constant() {
        return p.monic();
    }
    p.div_exact(&c).expect("content divides").monic()
}

/// Pseudo-remainder of `a` by `b` viewed as univariate in `var`.
fn prem<C: Scalar>(a: &MPoly<C>, b: &MPoly<C>, var: usize) -> MPoly<C> {
    let n = a.nvars();
    let mut r = a.to_univariate(var);
    let bu = b.to_univariate(var);
    let db = bu.len() - 1;
    let lcb = &bu[db];
    let mut steps = (r.len() - 1 + 1).saturating_sub(db) as u32;
    while r.len() > db {
        let k = r.len() - 1;
        let top = r[k].clone();
        for c in r.iter_mut() {
            *c = c.mul(lcb);
        }
        for (j, bj) in bu.iter().enumerate() {
            r[k - db + j] = r[k - db + j].sub(&top.mul(bj));
        }
        while r.last().is_some_and(MPoly::is_zero) {
            r.pop();
        }
        steps = steps.saturating_sub(1);
    }
    let out = MPoly::from_univariate(&r, var, n);
    if steps > 0 {
        out.mul(&lcb.pow(steps))
    } else {
        out
    }
}

/// Degree in `var` of the GCD after specializing the other active
/// variables at a point where both leading coefficients survive. It bounds
/// the true degree in `var` from above.
fn specialized_degree<C: Scalar>(p: &MPoly<C>, q: &MPoly<C>, var: usize) -> Option<usize> {
    let lp = p.to_univariate(var).pop()?;
    let lq = q.to_univariate(var).pop()?;
    for trial in 0..4i64 {
        let vals: Vec<C> = (0..var).map(|i| C::from_i64(3 + 2 * i as i64 + 7 * trial)).collect();
        let at = |f: &MPoly<C>| {
            (0..var).fold(f.clone(), |acc, i| acc.substitute(i, &vals[i]))
        };
        if at(&lp).is_zero() || at(&lq).is_zero() {
            continue;
        }
        let g = at(p).as_unipoly(var).gcd(&at(q).as_unipoly(var));
        return g.degree();
    }
    None
}

fn gcd_prs<C: Scalar>(p: &MPoly<C>, q: &MPoly<C>, active: usize, strategy: GcdStrategy) -> MPoly<C> {
    let var = active - 1;
    let cp = content(p, var, active, strategy);
    let cq = content(q, var, active, strategy);
    let c = gcd_rec(&cp, &cq, active - 1, strategy);
    let p1 = p.div_exact(&cp).expect("content divides");
    let q1 = q.div_exact(&cq).expect("content divides");
    if p1.degree_in(var) == 0 || q1.degree_in(var) == 0 {
        return c.monic();
    }
    if specialized_degree(&p1, &q1, var) == Some(0) {
        return c.monic();
    }
    let (mut a, mut b) = if p1.degree_in(var) >= q1.degree_in(var) { (p1, q1) } else { (q1, p1) };
    let g = loop {
        let r = prem(&a, &b, var);
        if r.is_zero() {
            break b;
        }
        if r.degree_in(var) == 0 {
            break MPoly::one(p.nvars());
        }
        a = b;
        b = primitive_part(&r, var, active, strategy);
    };
    let g = primitive_part(&g, var, active, strategy);
    c.mul(&g).monic()
}

/// Newton-form interpolant in one variable over the coefficient field.
struct Newton<C> {
    points: Vec<C>,
    coeffs: Vec<C>,
}

impl<C: Scalar> Newton<C> {
    fn new() -> Self {
        Newton { points: Vec::new(), coeffs: Vec::new() }
    }

    fn eval(&self, x: &C) -> C {
        let mut acc = C::zero();
        for k in (0..self.coeffs.len()).rev() {
            acc = acc.times(&x.minus(&self.points[k])).plus(&self.coeffs[k]);
        }
        acc
    }

    /// Adds a sample; returns whether the interpolant changed.
    fn push(&mut self, x: C, y: C) -> bool {
        let resid = y.minus(&self.eval(&x));
        let denom = self
            .points
            .iter()
            .fold(C::one(), |acc, s| acc.times(&x.minus(s)));
        let c = resid.times(&denom.inverse().expect("distinct points"));
        let changed = !c.is_zero();
        self.points.push(x);
        self.coeffs.push(c);
        changed
    }

    fn to_unipoly(&self) -> UniPoly<C> {
        let mut acc = UniPoly::zero();
        for k in (0..self.coeffs.len()).rev() {
            let lin = UniPoly::new(alloc::vec![self.points[k].negate(), C::one()]);
            acc = acc.mul(&lin).add(&UniPoly::constant(self.coeffs[k].clone()));
        }
        acc
    }
}

/// Two-variable GCD (`y = x_0`, main variable `z = x_1`) by evaluating `y`,
/// taking univariate GCDs in `z` and interpolating the coefficients.
/// Returns `None` when it gives up; callers then use remainder sequences.
fn gcd_interp<C: Scalar>(p: &MPoly<C>, q: &MPoly<C>) -> Option<MPoly<C>> {
    let n = p.nvars();
    let (y, z) = (0, 1);
    let strategy = GcdStrategy::Auto;
    let cp = content(p, z, 2, strategy);
    let cq = content(q, z, 2, strategy);
    let c = gcd_rec(&cp, &cq, 1, strategy);
    let p1 = p.div_exact(&cp).ok()?;
    let q1 = q.div_exact(&cq).ok()?;
    if p1.degree_in(z) == 0 || q1.degree_in(z) == 0 {
        return Some(c.monic());
    }
    let lp = p1.to_univariate(z).pop()?.as_unipoly(y);
    let lq = q1.to_univariate(z).pop()?.as_unipoly(y);
    let gamma = lp.gcd(&lq);
    let bound = gamma.degree()? + p1.degree_in(y).min(q1.degree_in(y)) as usize + 1;
    let pu = p1.to_univariate(y).into_iter().map(|c| c.as_unipoly(z)).collect::<Vec<_>>();
    let qu = q1.to_univariate(y).into_iter().map(|c| c.as_unipoly(z)).collect::<Vec<_>>();
    // p1(s, z) as a univariate polynomial in z
    let at = |parts: &[UniPoly<C>], s: &C| {
        parts.iter().rev().fold(UniPoly::zero(), |acc, c| acc.scale(s).add(c))
    };

    let mut target_deg = usize::MAX;
    let mut series: Vec<Newton<C>> = Vec::new();
    let mut skipped = 0usize;
    let mut k = 0i64;
    loop {
        // 0, 1, -1, 2, -2, ...
        let s_int = if k % 2 == 1 { (k + 1) / 2 } else { -(k / 2) };
        k += 1;
        let s = C::from_i64(s_int);
        if lp.eval(&s).is_zero() || lq.eval(&s).is_zero() {
            skipped += 1;
            if skipped > 4 * bound + 16 {
                return None;
            }
            continue;
        }
        let g = at(&pu, &s).gcd(&at(&qu, &s));
        let deg = g.degree()?;
        if deg == 0 {
            return Some(c.monic());
        }
        if deg > target_deg {
            skipped += 1;
            if skipped > 4 * bound + 16 {
                return None;
            }
            continue;
        }
        if deg < target_deg {
            target_deg = deg;
            series = (0..=deg).map(|_| Newton::new()).collect();
        }
        let scale = gamma.eval(&s);
        let mut changed = false;
        for (j, nt) in series.iter_mut().enumerate() {
            changed |= nt.push(s.clone(), g.coeff(j).times(&scale));
        }
        let count = series[0].points.len();
        if (!changed && count >= 2) || count >= bound {
            let parts: Vec<MPoly<C>> = series
                .iter()
                .map(|nt| MPoly::from_unipoly(&nt.to_unipoly(), y, n))
                .collect();
            let cand = MPoly::from_univariate(&parts, z, n);
            let cand = primitive_part(&cand, z, 2, strategy);
            if cand.degree_in(z) as usize == target_deg
                && p1.div_exact(&cand).is_ok()
                && q1.div_exact(&cand).is_ok()
            {
                return Some(c.mul(&cand).monic());
            }
            if count >= bound + 4 {
                return None;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::scalar::Rational;
    use alloc::vec;

    fn v(i: usize) -> HomPoly<Rational> {
        HomPoly::var(i, 3)
    }

    fn lin(a: i64, b: i64, c: i64) -> HomPoly<Rational> {
        HomPoly::linear(&[Rational::from_i64(a), Rational::from_i64(b), Rational::from_i64(c)])
    }

    #[test]
    fn monomial_gcd() {
        let g = poly_gcd(&v(0).mul(&v(1)), &v(0).mul(&v(2))).unwrap();
        assert_eq!(g, v(0));
    }

    #[test]
    fn difference_of_squares_vs_square() {
        let p = v(0).pow(2).sub(&v(1).pow(2)).unwrap();
        let q = lin(1, 1, 0).pow(2);
        assert_eq!(poly_gcd(&p, &q).unwrap(), lin(1, 1, 0));
        assert_eq!(poly_gcd_with(&p, &q, GcdStrategy::RemainderSequence).unwrap(), lin(1, 1, 0));
    }

    #[test]
    fn gcd_with_unit() {
        let p = lin(1, 2, 3).pow(3).mul(&v(1));
        assert_eq!(poly_gcd(&p, &HomPoly::one(3)).unwrap(), HomPoly::one(3));
    }

    #[test]
    fn float_domain_is_refused() {
        let p: HomPoly<num_complex::Complex64> = HomPoly::var(0, 2);
        assert_eq!(poly_gcd(&p, &p).unwrap_err(), Error::ExactDomainRequired);
    }

    #[test]
    fn content_of_maps() {
        let f = PolyMap::new(vec![v(0).mul(&v(1)), v(0).mul(&v(2)), v(0).pow(2)]).unwrap();
        assert_eq!(map_content(&f).unwrap(), v(0));
        let g = PolyMap::new((0..3).map(|i| v(i).pow(2)).collect()).unwrap();
        assert_eq!(map_content(&g).unwrap(), HomPoly::one(3));
    }

    #[test]
    fn exact_division_cases() {
        let p = v(0).pow(2).add(&v(0).mul(&v(1))).unwrap();
        assert_eq!(poly_divide_exact(&p, &v(0)).unwrap(), lin(1, 1, 0));
        assert_eq!(poly_divide_exact(&p, &HomPoly::one(3)).unwrap(), p);
        let cube = lin(1, 1, 0).pow(3);
        assert_eq!(poly_divide_exact(&cube, &lin(1, 1, 0)).unwrap(), lin(1, 1, 0).pow(2));
        match poly_divide_exact(&p, &v(2)) {
            Err(Error::NotExactDivision { remainder }) => assert!(!remainder.is_empty()),
            other => panic!("expected remainder witness, got {other:?}"),
        }
    }

    #[test]
    fn shared_factor_high_degree() {
        let g = lin(1, -2, 5).mul(&lin(3, 1, -1)).mul(&v(0));
        let p = g.mul(&lin(1, 1, 1).pow(4));
        let q = g.mul(&lin(2, -1, 7).pow(3)).mul(&v(2));
        assert_eq!(poly_gcd(&p, &q).unwrap(), g.monic());
        assert_eq!(poly_gcd_with(&p, &q, GcdStrategy::RemainderSequence).unwrap(), g.monic());
    }

    #[test]
    fn four_variables_use_remainder_sequences() {
        let x = |i| HomPoly::<Rational>::var(i, 4);
        let g = x(1).add(&x(3)).unwrap();
        let p = g.mul(&x(0).add(&x(2)).unwrap());
        let q = g.mul(&x(2).sub(&x(1)).unwrap());
        assert_eq!(poly_gcd(&p, &q).unwrap(), g);
    }
}
