//! Sparse multivariate polynomials keyed by exponent vectors in graded
//! lexicographic order.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use super::scalar::Scalar;
use super::unipoly::UniPoly;

/// Exponent vector `x0^e0 x1^e1 ...`, ordered graded-lexicographically
/// (total degree first, then `x0 > x1 > ...`).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(i: usize, nvars: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Self) -> Self {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Self) -> Option<Self> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Monomial)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A polynomial in `nvars` variables with no zero coefficients stored.
#[derive(Debug, Clone, PartialEq)]
pub struct MPoly<C> {
    nvars: usize,
    terms: BTreeMap<Monomial, C>,
}

fn add_into<C: Scalar>(terms: &mut BTreeMap<Monomial, C>, m: Monomial, c: C) {
    if c.is_zero() {
        return;
    }
    match terms.entry(m) {
        alloc::collections::btree_map::Entry::Vacant(v) => {
            v.insert(c);
        }
        alloc::collections::btree_map::Entry::Occupied(mut o) => {
            let s = o.get().plus(&c);
            if s.is_zero() {
                o.remove();
            } else {
                *o.get_mut() = s;
            }
        }
    }
}

impl<C: Scalar> MPoly<C> {
    pub fn zero(nvars: usize) -> Self {
        MPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(c: C, nvars: usize) -> Self {
        Self::from_terms(nvars, [(Monomial::one(nvars), c)])
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(C::one(), nvars)
    }

    pub fn var(i: usize, nvars: usize) -> Self {
        Self::from_terms(nvars, [(Monomial::var(i, nvars), C::one())])
    }

    /// Sums the given terms; repeated monomials are combined.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, C)>) -> Self {
        let mut map = BTreeMap::new();
        for (m, c) in terms {
            assert_eq!(m.0.len(), nvars, "exponent vector length");
            add_into(&mut map, m, c);
        }
        MPoly { nvars, terms: map }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in increasing graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Option<&C> {
        self.terms.get(m)
    }

    pub fn leading(&self) -> Option<(&Monomial, &C)> {
        self.terms.last_key_value()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    pub fn is_homogeneous_of(&self, d: u32) -> bool {
        self.terms.keys().all(|m| m.degree() == d)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            add_into(&mut terms, m.clone(), c.clone());
        }
        MPoly { nvars: self.nvars, terms }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            add_into(&mut terms, m.clone(), c.negate());
        }
        MPoly { nvars: self.nvars, terms }
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|c| c.negate())
    }

    pub fn scale(&self, s: &C) -> Self {
        if s.is_zero() {
            return Self::zero(self.nvars);
        }
        MPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.times(s))).collect(),
        }
    }

    pub fn mul_term(&self, mono: &Monomial, s: &C) -> Self {
        if s.is_zero() {
            return Self::zero(self.nvars);
        }
        MPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.mul(mono), c.times(s))).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut terms = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                add_into(&mut terms, m1.mul(m2), c1.times(c2));
            }
        }
        MPoly { nvars: self.nvars, terms }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.nvars);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Coefficient-wise map; zero results are dropped.
    pub fn map_coeffs<D: Scalar>(&self, f: impl Fn(&C) -> D) -> MPoly<D> {
        MPoly::from_terms(self.nvars, self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }

    pub fn eval(&self, point: &[C]) -> C {
        assert_eq!(point.len(), self.nvars, "evaluation point length");
        let maxe: Vec<u32> = (0..self.nvars)
            .map(|i| self.terms.keys().map(|m| m.0[i]).max().unwrap_or(0))
            .collect();
        let powers: Vec<Vec<C>> = point
            .iter()
            .zip(&maxe)
            .map(|(x, &e)| {
                let mut p = Vec::with_capacity(e as usize + 1);
                p.push(C::one());
                for k in 0..e as usize {
                    let next = p[k].times(x);
                    p.push(next);
                }
                p
            })
            .collect();
        self.terms.iter().fold(C::zero(), |acc, (m, c)| {
            let t = m
                .0
                .iter()
                .enumerate()
                .fold(c.clone(), |t, (i, &e)| if e == 0 { t } else { t.times(&powers[i][e as usize]) });
            acc.plus(&t)
        })
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.0[var]).max().unwrap_or(0)
    }

    /// Lowest exponent of `var` over all terms (0 for the zero polynomial).
    pub fn valuation_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.0[var]).min().unwrap_or(0)
    }

    /// Writes the polynomial as `sum_k c_k(x) var^k`; the `c_k` keep the
    /// same number of variables with exponent 0 in `var`.
    pub fn to_univariate(&self, var: usize) -> Vec<MPoly<C>> {
        let deg = self.degree_in(var) as usize;
        let mut out = vec![Self::zero(self.nvars); deg + 1];
        for (m, c) in &self.terms {
            let k = m.0[var] as usize;
            let mut e = m.0.clone();
            e[var] = 0;
            out[k].terms.insert(Monomial(e), c.clone());
        }
        out
    }

    pub fn from_univariate(coeffs: &[MPoly<C>], var: usize, nvars: usize) -> Self {
        let mut terms = BTreeMap::new();
        for (k, p) in coeffs.iter().enumerate() {
            for (m, c) in &p.terms {
                let mut e = m.0.clone();
                e[var] += k as u32;
                add_into(&mut terms, Monomial(e), c.clone());
            }
        }
        MPoly { nvars, terms }
    }

    /// Sets `var = value`, keeping the variable count.
    pub fn substitute(&self, var: usize, value: &C) -> Self {
        let mut powers = vec![C::one()];
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let k = m.0[var] as usize;
            while powers.len() <= k {
                let next = powers.last().unwrap().times(value);
                powers.push(next);
            }
            let mut e = m.0.clone();
            e[var] = 0;
            add_into(&mut terms, Monomial(e), c.times(&powers[k]));
        }
        MPoly { nvars: self.nvars, terms }
    }

    /// Reads a polynomial involving only `var` as a dense univariate one.
    pub fn as_unipoly(&self, var: usize) -> UniPoly<C> {
        let deg = self.degree_in(var) as usize;
        let mut coeffs = vec![C::zero(); deg + 1];
        for (m, c) in &self.terms {
            debug_assert!(m.0.iter().enumerate().all(|(i, &e)| i == var || e == 0));
            coeffs[m.0[var] as usize] = c.clone();
        }
        UniPoly::new(coeffs)
    }

    pub fn from_unipoly(p: &UniPoly<C>, var: usize, nvars: usize) -> Self {
        Self::from_terms(
            nvars,
            p.coeffs().iter().enumerate().map(|(k, c)| {
                let mut e = vec![0; nvars];
                e[var] = k as u32;
                (Monomial(e), c.clone())
            }),
        )
    }

    /// Multivariate division by a single divisor.
    ///
    /// Returns the quotient, or the nonzero remainder when `divisor` does
    /// not divide `self`. A single polynomial is a Groebner basis of its
    /// ideal, so the remainder vanishes exactly when the division is exact.
    pub fn div_exact(&self, divisor: &Self) -> core::result::Result<Self, Self> {
        let (lm, lc) = match divisor.leading() {
            Some((m, c)) => (m.clone(), c.clone()),
            None => return Err(self.clone()),
        };
        let lc_inv = lc.inverse().expect("nonzero leading coefficient");
        let tail: Vec<(Monomial, C)> = divisor
            .terms
            .iter()
            .rev()
            .skip(1)
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        let mut rem = self.terms.clone();
        let mut quot = BTreeMap::new();
        let mut residue = BTreeMap::new();
        while let Some((m, c)) = rem.pop_last() {
            match m.div(&lm) {
                Some(qm) => {
                    let qc = c.times(&lc_inv);
                    for (tm, tc) in &tail {
                        add_into(&mut rem, tm.mul(&qm), qc.times(tc).negate());
                    }
                    quot.insert(qm, qc);
                }
                None => {
                    residue.insert(m, c);
                }
            }
        }
        if residue.is_empty() {
            Ok(MPoly { nvars: self.nvars, terms: quot })
        } else {
            Err(MPoly { nvars: self.nvars, terms: residue })
        }
    }

    /// Scales so the graded-lex leading coefficient is one.
    pub fn monic(&self) -> Self {
        match self.leading().and_then(|(_, c)| c.inverse()) {
            Some(inv) => self.scale(&inv),
            None => self.clone(),
        }
    }

    /// Drops variable `var` (which must not occur) from the exponent vectors.
    pub fn remove_var(&self, var: usize) -> Self {
        MPoly {
            nvars: self.nvars - 1,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    debug_assert_eq!(m.0[var], 0);
                    let mut e = m.0.clone();
                    e.remove(var);
                    (Monomial(e), c.clone())
                })
                .collect(),
        }
    }

    /// Inserts a new variable at position `var` with exponent zero.
    pub fn insert_var(&self, var: usize) -> Self {
        MPoly {
            nvars: self.nvars + 1,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut e = m.0.clone();
                    e.insert(var, 0);
                    (Monomial(e), c.clone())
                })
                .collect(),
        }
    }

    /// Homogenizes to total degree `deg` using variable `var` (already present
    /// with exponent zero everywhere).
    pub fn homogenize(&self, var: usize, deg: u32) -> Self {
        MPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut e = m.0.clone();
                    e[var] += deg - m.degree();
                    (Monomial(e), c.clone())
                })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::scalar::Rational;

    fn x(i: usize) -> MPoly<Rational> {
        MPoly::var(i, 3)
    }

    #[test]
    fn grlex_order() {
        let a = Monomial::new(vec![2, 0, 0]);
        let b = Monomial::new(vec![1, 1, 0]);
        let c = Monomial::new(vec![0, 0, 3]);
        assert!(a > b);
        assert!(c > a);
    }

    #[test]
    fn division_exact_and_witness() {
        let p = x(0).mul(&x(0)).add(&x(0).mul(&x(1)));
        let q = p.div_exact(&x(0)).unwrap();
        assert_eq!(q, x(0).add(&x(1)));
        let r = p.add(&x(2).mul(&x(2))).div_exact(&x(0)).unwrap_err();
        assert_eq!(r, x(2).mul(&x(2)));
    }

    #[test]
    fn univariate_views_round_trip() {
        let p = x(0).add(&x(1)).pow(3).add(&x(2).mul(&x(1)));
        for v in 0..3 {
            let u = p.to_univariate(v);
            assert_eq!(MPoly::from_univariate(&u, v, 3), p);
        }
    }

    #[test]
    fn substitute_matches_eval() {
        let p = x(0).add(&x(1)).pow(3).sub(&x(2).mul(&x(1)));
        let two = Rational::from_i64(2);
        let s = p.substitute(1, &two);
        let pt = [Rational::from_i64(3), two.clone(), Rational::from_i64(-1)];
        assert_eq!(s.eval(&pt), p.eval(&pt));
    }
}
