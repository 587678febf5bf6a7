//! Homogeneous polynomials and polynomial self-maps of `C^{k+1}`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use super::mpoly::{MPoly, Monomial};
use super::scalar::Scalar;
use crate::error::{Error, Result};

/// A homogeneous polynomial. The zero polynomial keeps the nominal degree
/// of its context.
#[derive(Debug, Clone, PartialEq)]
pub struct HomPoly<C> {
    poly: MPoly<C>,
    degree: u32,
}

impl<C: Scalar> HomPoly<C> {
    pub fn new(poly: MPoly<C>, degree: u32) -> Result<Self> {
        if !poly.is_homogeneous_of(degree) {
            return Err(Error::Shape(format!("polynomial is not homogeneous of degree {degree}")));
        }
        Ok(HomPoly { poly, degree })
    }

    /// Wraps a nonzero homogeneous polynomial, reading off its degree.
    pub fn from_poly(poly: MPoly<C>) -> Result<Self> {
        let degree = poly
            .total_degree()
            .ok_or_else(|| Error::Shape("zero polynomial has no intrinsic degree".into()))?;
        Self::new(poly, degree)
    }

    pub fn zero(nvars: usize, degree: u32) -> Self {
        HomPoly { poly: MPoly::zero(nvars), degree }
    }

    pub fn one(nvars: usize) -> Self {
        HomPoly { poly: MPoly::one(nvars), degree: 0 }
    }

    pub fn constant(c: C, nvars: usize) -> Self {
        HomPoly { poly: MPoly::constant(c, nvars), degree: 0 }
    }

    pub fn var(i: usize, nvars: usize) -> Self {
        HomPoly { poly: MPoly::var(i, nvars), degree: 1 }
    }

    /// Linear form `sum_i coeffs[i] x_i`.
    pub fn linear(coeffs: &[C]) -> Self {
        let n = coeffs.len();
        HomPoly {
            poly: MPoly::from_terms(
                n,
                coeffs.iter().enumerate().map(|(i, c)| (Monomial::var(i, n), c.clone())),
            ),
            degree: 1,
        }
    }

    pub fn poly(&self) -> &MPoly<C> {
        &self.poly
    }

    pub fn into_poly(self) -> MPoly<C> {
        self.poly
    }

    pub fn nvars(&self) -> usize {
        self.poly.nvars()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        !self.is_zero() && self.degree == 0
    }

    pub fn num_terms(&self) -> usize {
        self.poly.num_terms()
    }

    /// Terms in decreasing graded-lex order.
    pub fn terms_desc(&self) -> impl Iterator<Item = (&Monomial, &C)> {
        self.poly.terms().rev()
    }

    pub fn leading_coeff(&self) -> Option<&C> {
        self.poly.leading().map(|(_, c)| c)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(HomPoly { poly: self.poly.add(&other.poly), degree: self.degree })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(HomPoly { poly: self.poly.sub(&other.poly), degree: self.degree })
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.nvars() != other.nvars() || self.degree != other.degree {
            return Err(Error::Shape(format!(
                "cannot add degree {} in {} vars to degree {} in {} vars",
                self.degree,
                self.nvars(),
                other.degree,
                other.nvars()
            )));
        }
        Ok(())
    }

    pub fn mul(&self, other: &Self) -> Self {
        HomPoly { poly: self.poly.mul(&other.poly), degree: self.degree + other.degree }
    }

    pub fn pow(&self, e: u32) -> Self {
        HomPoly { poly: self.poly.pow(e), degree: self.degree * e }
    }

    pub fn scale(&self, s: &C) -> Self {
        HomPoly { poly: self.poly.scale(s), degree: self.degree }
    }

    /// Leading coefficient one in graded-lex order.
    pub fn monic(&self) -> Self {
        HomPoly { poly: self.poly.monic(), degree: self.degree }
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff().is_some_and(|c| c.is_one())
    }

    pub fn eval(&self, point: &[C]) -> C {
        self.poly.eval(point)
    }

    pub fn map_coeffs<D: Scalar>(&self, f: impl Fn(&C) -> D) -> HomPoly<D> {
        HomPoly { poly: self.poly.map_coeffs(f), degree: self.degree }
    }

    /// Complex-double image under the coefficient embedding.
    pub fn embed(&self) -> HomPoly<Complex64> {
        self.map_coeffs(|c| c.to_complex())
    }

    /// Sum of coefficient moduli.
    pub fn coeff_modulus_sum(&self) -> f64 {
        self.poly.terms().map(|(_, c)| c.modulus()).sum()
    }
}

/// A lift `F = (F_0, ..., F_k)` of a rational self-map of `P^k`: `k+1`
/// homogeneous polynomials in `k+1` variables of one common degree.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyMap<C> {
    comps: Vec<HomPoly<C>>,
}

impl<C: Scalar> PolyMap<C> {
    pub fn new(comps: Vec<HomPoly<C>>) -> Result<Self> {
        let first = comps.first().ok_or(Error::ZeroMap)?;
        let (n, d) = (first.nvars(), first.degree());
        if comps.len() != n {
            return Err(Error::Shape(format!(
                "a self-map of C^{n} needs {n} components, got {}",
                comps.len()
            )));
        }
        if let Some(bad) = comps.iter().find(|c| c.nvars() != n || c.degree() != d) {
            return Err(Error::Shape(format!(
                "component of degree {} in {} vars does not match degree {d} in {n} vars",
                bad.degree(),
                bad.nvars()
            )));
        }
        if comps.iter().all(HomPoly::is_zero) {
            return Err(Error::ZeroMap);
        }
        Ok(PolyMap { comps })
    }

    pub fn components(&self) -> &[HomPoly<C>] {
        &self.comps
    }

    pub fn nvars(&self) -> usize {
        self.comps[0].nvars()
    }

    pub fn degree(&self) -> u32 {
        self.comps[0].degree()
    }

    pub fn eval(&self, point: &[C]) -> Vec<C> {
        self.comps.iter().map(|c| c.eval(point)).collect()
    }

    pub fn scale(&self, s: &C) -> Self {
        PolyMap { comps: self.comps.iter().map(|c| c.scale(s)).collect() }
    }

    pub fn embed(&self) -> PolyMap<Complex64> {
        PolyMap { comps: self.comps.iter().map(HomPoly::embed).collect() }
    }

    /// Identity map `z -> z`.
    pub fn identity(nvars: usize) -> Self {
        PolyMap { comps: (0..nvars).map(|i| HomPoly::var(i, nvars)).collect() }
    }

    /// Divides every component by `divisor`, which must divide each exactly.
    pub fn divide_by(&self, divisor: &HomPoly<C>) -> Result<Self> {
        let comps = self
            .comps
            .iter()
            .map(|c| super::gcd::poly_divide_exact(c, divisor))
            .collect::<Result<Vec<_>>>()?;
        PolyMap::new(comps)
    }
}

/// Formal substitution `z -> outer(inner(z))`.
pub fn poly_compose<C: Scalar>(outer: &PolyMap<C>, inner: &PolyMap<C>) -> Result<PolyMap<C>> {
    let n = outer.nvars();
    if inner.comps.len() != n {
        return Err(Error::Shape(format!(
            "outer map takes {n} variables, inner map has {} components",
            inner.comps.len()
        )));
    }
    let inner_deg = inner.degree();
    let inner_nvars = inner.nvars();
    // powers[j][e] = inner_j^e, filled on demand
    let mut powers: Vec<Vec<MPoly<C>>> = inner
        .comps
        .iter()
        .map(|c| vec![MPoly::one(inner_nvars), c.poly.clone()])
        .collect();
    let mut comps = Vec::with_capacity(n);
    for comp in &outer.comps {
        let mut acc = MPoly::zero(inner_nvars);
        for (m, c) in comp.poly.terms() {
            let mut term = MPoly::constant(c.clone(), inner_nvars);
            for (j, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[j].len() <= e as usize {
                    let next = powers[j].last().unwrap().mul(&inner.comps[j].poly);
                    powers[j].push(next);
                }
                term = term.mul(&powers[j][e as usize]);
            }
            acc = acc.add(&term);
        }
        comps.push(HomPoly { poly: acc, degree: outer.degree() * inner_deg });
    }
    if comps.iter().all(HomPoly::is_zero) {
        return Err(Error::DegenerateComposition);
    }
    Ok(PolyMap { comps })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::scalar::Rational;

    fn v(i: usize) -> HomPoly<Rational> {
        HomPoly::var(i, 3)
    }

    #[test]
    fn cyclic_shift_composes_to_inverse_shift() {
        let shift = PolyMap::new(vec![v(1), v(2), v(0)]).unwrap();
        let twice = poly_compose(&shift, &shift).unwrap();
        assert_eq!(twice, PolyMap::new(vec![v(2), v(0), v(1)]).unwrap());
    }

    #[test]
    fn squares_compose_to_fourth_powers() {
        let sq = PolyMap::new((0..3).map(|i| v(i).pow(2)).collect()).unwrap();
        let four = poly_compose(&sq, &sq).unwrap();
        assert_eq!(four, PolyMap::new((0..3).map(|i| v(i).pow(4)).collect()).unwrap());
        assert_eq!(four.degree(), 4);
    }

    #[test]
    fn rejects_mismatched_components() {
        assert!(PolyMap::new(vec![v(0), v(1).pow(2), v(2)]).is_err());
        assert_eq!(
            PolyMap::new(vec![HomPoly::<Rational>::zero(3, 2); 3]).unwrap_err(),
            Error::ZeroMap
        );
        assert!(HomPoly::new(v(0).poly().add(v(1).pow(2).poly()), 1).is_err());
    }

    #[test]
    fn degenerate_composition_is_reported() {
        // (x - y, y - x, 0) composed with (z, z, z) vanishes identically
        let outer = PolyMap::new(vec![
            v(0).sub(&v(1)).unwrap(),
            v(1).sub(&v(0)).unwrap(),
            HomPoly::zero(3, 1),
        ])
        .unwrap();
        let inner = PolyMap::new(vec![v(2), v(2), v(2)]).unwrap();
        assert_eq!(poly_compose(&outer, &inner).unwrap_err(), Error::DegenerateComposition);
    }
}
