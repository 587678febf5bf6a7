//! Coefficient domains: the [`Scalar`] trait and its rational and
//! complex-double instances.

use alloc::format;
use alloc::string::String;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::fmath;

/// Exact rational number, always reduced with a positive denominator.
pub type Rational = num_rational::BigRational;

/// A field of polynomial coefficients.
///
/// Exact instances (`EXACT = true`) support GCD and exact division; the
/// complex-double instance is used for numerical evaluation only.
pub trait Scalar: Clone + PartialEq + fmt::Debug {
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn from_rational(r: &Rational) -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negate(&self) -> Self;
    /// Multiplicative inverse, `None` for zero.
    fn inverse(&self) -> Option<Self>;
    /// Embedding into the complex numbers.
    fn to_complex(&self) -> Complex64;
    /// Text form used by the polynomial serializer.
    fn coeff_text(&self) -> String;
    fn parse_coeff(s: &str) -> Result<Self>;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn modulus(&self) -> f64 {
        fmath::cabs(self.to_complex())
    }
}

/// `p/q` with the denominator always written, `0/1` for zero.
pub fn rational_text(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("bad rational `{s}`"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
            let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
            if q.is_zero() {
                return Err(Error::Parse(format!("zero denominator in `{s}`")));
            }
            Ok(Rational::new(p, q))
        }
        None => Ok(Rational::from_integer(BigInt::from_str(s).map_err(|_| bad())?)),
    }
}

/// Parses a decimal literal such as `-0.125` or `3` into an exact rational.
pub fn parse_decimal_exact(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("bad decimal `{s}`"));
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.bytes().chain(frac_part.bytes()).all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    let digits = format!("{int_part}{frac_part}");
    let num = BigInt::from_str(&digits).map_err(|_| bad())?;
    let den = num_traits::pow(BigInt::from(10), frac_part.len());
    let r = Rational::new(num, den);
    Ok(if neg { -r } else { r })
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
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
        -self
    }
    fn inverse(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn to_complex(&self) -> Complex64 {
        Complex64::new(rational_to_f64(self), 0.0)
    }
    fn coeff_text(&self) -> String {
        rational_text(self)
    }
    fn parse_coeff(s: &str) -> Result<Self> {
        parse_rational(s)
    }
}

impl Scalar for Complex64 {
    const EXACT: bool = false;

    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn from_i64(v: i64) -> Self {
        Complex64::new(v as f64, 0.0)
    }
    fn from_rational(r: &Rational) -> Self {
        Complex64::new(rational_to_f64(r), 0.0)
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
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
        -self
    }
    fn inverse(&self) -> Option<Self> {
        if Scalar::is_zero(self) {
            None
        } else {
            Some(self.inv())
        }
    }
    fn to_complex(&self) -> Complex64 {
        *self
    }
    fn coeff_text(&self) -> String {
        format!("({:?},{:?})", self.re, self.im)
    }
    fn parse_coeff(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad complex coefficient `{s}`"));
        let inner = s
            .trim()
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(bad)?;
        let (re, im) = inner.split_once(',').ok_or_else(bad)?;
        let re = f64::from_str(re.trim()).map_err(|_| bad())?;
        let im = f64::from_str(im.trim()).map_err(|_| bad())?;
        Ok(Complex64::new(re, im))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_text_always_has_denominator() {
        assert_eq!(rational_text(&Rational::from_i64(0)), "0/1");
        assert_eq!(rational_text(&Rational::from_i64(-3)), "-3/1");
        let r = parse_rational("6/-4").unwrap();
        assert_eq!(rational_text(&r), "-3/2");
    }

    #[test]
    fn decimal_parsing_is_exact() {
        assert_eq!(parse_decimal_exact("0.125").unwrap(), parse_rational("1/8").unwrap());
        assert_eq!(parse_decimal_exact("-2").unwrap(), Rational::from_i64(-2));
        assert_eq!(parse_decimal_exact(".5").unwrap(), parse_rational("1/2").unwrap());
        assert!(parse_decimal_exact("1e3").is_err());
        assert!(parse_decimal_exact("").is_err());
    }

    #[test]
    fn complex_text_round_trips() {
        let z = Complex64::new(0.1, -1e-300);
        let back = Complex64::parse_coeff(&z.coeff_text()).unwrap();
        assert_eq!(z, back);
    }
}
