//! Cyclotomic fields `Q(zeta_m) = Q[x]/Phi_m(x)` with dense coefficient vectors.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::scalar::{parse_rational, rational_text, Rational, Scalar};
use super::unipoly::UniPoly;
use crate::error::{Error, Result};
use crate::fmath;

/// Conductors above this are refused by the text parser.
const PARSE_CONDUCTOR_LIMIT: u32 = 1024;

/// `Phi_m` with integer coefficients, low degree first.
fn cyclotomic_int(m: u32) -> Vec<BigInt> {
    // Phi_m = (x^m - 1) / prod_{d | m, d < m} Phi_d
    let mut num = vec![BigInt::zero(); m as usize + 1];
    num[0] = -BigInt::one();
    num[m as usize] = BigInt::one();
    for d in 1..m {
        if m.is_multiple_of(d) {
            num = div_monic_int(&num, &cyclotomic_int(d));
        }
    }
    num
}

/// Exact quotient of integer polynomials by a monic divisor.
fn div_monic_int(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let mut rem = a.to_vec();
    let mut quot = vec![BigInt::zero(); a.len() - db];
    for k in (db..a.len()).rev() {
        let q = rem[k].clone();
        if q.is_zero() {
            continue;
        }
        for (j, bc) in b.iter().enumerate() {
            rem[k - db + j] -= &q * bc;
        }
        quot[k - db] = q;
    }
    debug_assert!(rem.iter().all(Zero::is_zero));
    quot
}

/// The `m`-th cyclotomic polynomial as a monic rational polynomial.
pub fn cyclotomic_polynomial(m: u32, cap: u32) -> Result<UniPoly<Rational>> {
    if m == 0 {
        return Err(Error::InvalidArgument("conductor must be positive".into()));
    }
    if m > cap {
        return Err(Error::ConductorTooLarge { m: m as u64, cap });
    }
    Ok(UniPoly::new(
        cyclotomic_int(m).into_iter().map(Rational::from_integer).collect(),
    ))
}

/// Euler's totient.
pub fn totient(m: u32) -> u32 {
    (1..=m).filter(|k| k.gcd(&m) == 1).count() as u32
}

/// The field `Q(zeta_m)`.
#[derive(Debug, PartialEq, Eq)]
pub struct CycloField {
    m: u32,
    /// `Phi_m`, low degree first, monic.
    phi: Vec<i64>,
}

impl CycloField {
    pub fn new(m: u32, cap: u32) -> Result<Arc<Self>> {
        let poly = cyclotomic_polynomial(m, cap)?;
        let phi = poly
            .coeffs()
            .iter()
            .map(|c| c.to_integer().to_i64().expect("small cyclotomic coefficient"))
            .collect();
        Ok(Arc::new(CycloField { m, phi }))
    }

    pub fn rationals() -> Arc<Self> {
        Arc::new(CycloField { m: 1, phi: vec![-1, 1] })
    }

    pub fn conductor(&self) -> u32 {
        self.m
    }

    /// `phi(m)`, the dimension over Q.
    pub fn degree(&self) -> usize {
        self.phi.len() - 1
    }

    /// Reduces a coefficient vector of any length modulo `Phi_m` in place.
    fn reduce(&self, v: &mut Vec<BigInt>) {
        let n = self.degree();
        for k in (n..v.len()).rev() {
            let c = core::mem::take(&mut v[k]);
            if c.is_zero() {
                continue;
            }
            for j in 0..n {
                let pj = self.phi[j];
                if pj != 0 {
                    v[k - n + j] -= &c * pj;
                }
            }
        }
        v.resize(n, BigInt::zero());
    }
}

/// An element of `Q(zeta_m)`, stored as integer numerators over a common
/// positive denominator.
///
/// Elements of a field of degree one (conductor 1 or 2) are rationals and mix
/// freely with any conductor; two genuinely different conductors do not mix.
#[derive(Clone)]
pub struct CycloNumber {
    field: Arc<CycloField>,
    num: Vec<BigInt>,
    den: BigInt,
}

impl CycloNumber {
    fn from_parts(field: Arc<CycloField>, mut num: Vec<BigInt>, den: BigInt) -> Self {
        field.reduce(&mut num);
        let mut x = CycloNumber { field, num, den };
        x.normalize();
        x
    }

    fn normalize(&mut self) {
        if self.den.is_negative() {
            self.den = -core::mem::take(&mut self.den);
            for c in &mut self.num {
                *c = -core::mem::take(c);
            }
        }
        let mut g = self.den.clone();
        for c in &self.num {
            if g.is_one() {
                break;
            }
            g = g.gcd(c);
        }
        if self.num.iter().all(Zero::is_zero) {
            self.den = BigInt::one();
            return;
        }
        if !g.is_one() {
            for c in &mut self.num {
                *c /= &g;
            }
            self.den /= &g;
        }
    }

    /// Builds `sum_j coeffs[j] zeta_m^j`, reducing modulo `Phi_m`.
    pub fn new(field: &Arc<CycloField>, coeffs: &[Rational]) -> Self {
        let den = coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num = coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        Self::from_parts(field.clone(), num, den)
    }

    pub fn from_rational(r: &Rational) -> Self {
        Self::new(&CycloField::rationals(), core::slice::from_ref(r))
    }

    pub fn zero_in(field: &Arc<CycloField>) -> Self {
        Self::from_parts(field.clone(), Vec::new(), BigInt::one())
    }

    /// `zeta_m^k` for any integer `k`.
    pub fn root_of_unity(field: &Arc<CycloField>, k: i64) -> Self {
        let e = k.rem_euclid(field.m as i64) as usize;
        let mut num = vec![BigInt::zero(); e + 1];
        num[e] = BigInt::one();
        Self::from_parts(field.clone(), num, BigInt::one())
    }

    pub fn conductor(&self) -> u32 {
        self.field.m
    }

    pub fn field(&self) -> &Arc<CycloField> {
        &self.field
    }

    /// Coefficients `c_0..c_{phi(m)-1}` in the power basis of `zeta_m`.
    pub fn coeffs(&self) -> Vec<Rational> {
        self.num
            .iter()
            .map(|c| Rational::new(c.clone(), self.den.clone()))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    fn is_rational_field(&self) -> bool {
        self.field.degree() == 1
    }

    /// The rational value of an element of a degree-one field.
    fn rational_value(&self) -> Rational {
        Rational::new(self.num[0].clone(), self.den.clone())
    }

    fn promote_to(&self, field: &Arc<CycloField>) -> Self {
        let mut num = vec![BigInt::zero(); field.degree()];
        num[0] = self.num[0].clone();
        CycloNumber { field: field.clone(), num, den: self.den.clone() }
    }

    /// Brings both operands into one field, or reports a conductor mismatch.
    fn align<'a>(
        a: &'a Self,
        b: &'a Self,
    ) -> Result<(alloc::borrow::Cow<'a, Self>, alloc::borrow::Cow<'a, Self>)> {
        use alloc::borrow::Cow;
        if a.field.m == b.field.m {
            Ok((Cow::Borrowed(a), Cow::Borrowed(b)))
        } else if a.is_rational_field() {
            Ok((Cow::Owned(a.promote_to(&b.field)), Cow::Borrowed(b)))
        } else if b.is_rational_field() {
            Ok((Cow::Borrowed(a), Cow::Owned(b.promote_to(&a.field))))
        } else {
            Err(Error::ConductorMismatch(a.field.m, b.field.m))
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        let (a, b) = Self::align(self, other)?;
        let num = if a.den == b.den {
            a.num.iter().zip(&b.num).map(|(x, y)| x + y).collect()
        } else {
            a.num
                .iter()
                .zip(&b.num)
                .map(|(x, y)| x * &b.den + y * &a.den)
                .collect()
        };
        let den = if a.den == b.den { a.den.clone() } else { &a.den * &b.den };
        let mut x = CycloNumber { field: a.field.clone(), num, den };
        x.normalize();
        Ok(x)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.neg_ref())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        let (a, b) = Self::align(self, other)?;
        if a.is_zero() || b.is_zero() {
            return Ok(Self::zero_in(&a.field));
        }
        let n = a.num.len();
        let mut prod = vec![BigInt::zero(); 2 * n - 1];
        for (i, x) in a.num.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.num.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        Ok(Self::from_parts(a.field.clone(), prod, &a.den * &b.den))
    }

    /// Inverse by extended Euclid against `Phi_m`.
    pub fn try_inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_rational_field() {
            let r = self.rational_value().recip();
            return Ok(Self::new(&self.field, &[r]));
        }
        let phi = UniPoly::new(
            self.field.phi.iter().map(|&c| Rational::from_i64(c)).collect(),
        );
        let u = UniPoly::new(self.coeffs());
        let (g, s, _) = u.ext_gcd(&phi);
        debug_assert_eq!(g.degree(), Some(0));
        Ok(Self::new(&self.field, s.coeffs()))
    }

    fn neg_ref(&self) -> Self {
        CycloNumber {
            field: self.field.clone(),
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }

    /// Embedding `zeta_m -> e^{2 pi i / m}`.
    pub fn embed(&self) -> Complex64 {
        let m = self.field.m as f64;
        let den = self.den.clone();
        self.num
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| {
                let v = Rational::new_raw(c.clone(), den.clone()).to_f64().unwrap_or(f64::NAN);
                fmath::cis_turns(j as f64 / m) * v
            })
            .fold(Complex64::new(0.0, 0.0), |acc, z| acc + z)
    }
}

pub fn cyclo_add(u: &CycloNumber, v: &CycloNumber) -> Result<CycloNumber> {
    u.try_add(v)
}

pub fn cyclo_mul(u: &CycloNumber, v: &CycloNumber) -> Result<CycloNumber> {
    u.try_mul(v)
}

pub fn cyclo_inv(u: &CycloNumber) -> Result<CycloNumber> {
    u.try_inv()
}

impl PartialEq for CycloNumber {
    fn eq(&self, other: &Self) -> bool {
        match Self::align(self, other) {
            Ok((a, b)) => a.den == b.den && a.num == b.num,
            Err(_) => false,
        }
    }
}

impl fmt::Debug for CycloNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.coeff_text())
    }
}

impl fmt::Display for CycloNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.coeff_text())
    }
}

macro_rules! cyclo_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&CycloNumber> for &CycloNumber {
            type Output = CycloNumber;
            fn $method(self, rhs: &CycloNumber) -> CycloNumber {
                self.$checked(rhs).expect("cyclotomic operands must share a conductor")
            }
        }
        impl $tr for CycloNumber {
            type Output = CycloNumber;
            fn $method(self, rhs: CycloNumber) -> CycloNumber {
                (&self).$method(&rhs)
            }
        }
    };
}

cyclo_binop!(Add, add, try_add);
cyclo_binop!(Sub, sub, try_sub);
cyclo_binop!(Mul, mul, try_mul);

impl Neg for &CycloNumber {
    type Output = CycloNumber;
    fn neg(self) -> CycloNumber {
        self.neg_ref()
    }
}

impl Neg for CycloNumber {
    type Output = CycloNumber;
    fn neg(self) -> CycloNumber {
        self.neg_ref()
    }
}

impl Scalar for CycloNumber {
    const EXACT: bool = true;

    fn zero() -> Self {
        Self::zero_in(&CycloField::rationals())
    }
    fn one() -> Self {
        Self::from_rational(&Rational::from_i64(1))
    }
    fn from_i64(v: i64) -> Self {
        Self::from_rational(&Rational::from_i64(v))
    }
    fn from_rational(r: &Rational) -> Self {
        CycloNumber::from_rational(r)
    }
    fn is_zero(&self) -> bool {
        CycloNumber::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negate(&self) -> Self {
        self.neg_ref()
    }
    fn inverse(&self) -> Option<Self> {
        self.try_inv().ok()
    }
    fn to_complex(&self) -> Complex64 {
        self.embed()
    }
    fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(Zero::is_zero)
    }
    fn coeff_text(&self) -> String {
        let mut s = format!("[{};", self.field.m);
        for (j, c) in self.coeffs().iter().enumerate() {
            s.push_str(if j == 0 { " " } else { ", " });
            s.push_str(&rational_text(c));
        }
        s.push(']');
        s
    }
    fn parse_coeff(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad cyclotomic coefficient `{s}`"));
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(bad)?;
        let (m, rest) = inner.split_once(';').ok_or_else(bad)?;
        let m: u32 = m.trim().parse().map_err(|_| bad())?;
        let field = CycloField::new(m, PARSE_CONDUCTOR_LIMIT)?;
        let coeffs = rest
            .split(',')
            .map(parse_rational)
            .collect::<Result<Vec<_>>>()?;
        if coeffs.len() != field.degree() {
            return Err(Error::Parse(format!(
                "conductor {m} needs {} coefficients, got {}",
                field.degree(),
                coeffs.len()
            )));
        }
        Ok(Self::new(&field, &coeffs))
    }
}
