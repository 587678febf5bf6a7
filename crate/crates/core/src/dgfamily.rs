//! The birational quadratic family `f_t` on P^2 with parameters
//! `a = i`, `b = -2 e^{i pi/4} e^{i pi t}`, `c = e^{i pi/4} e^{i pi t} / 2`.
//!
//! Rational `t = p/q` is handled exactly in `Q(zeta_m)`, `m = lcm(8, 2q)`;
//! any real `t` can be handled in double precision.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::dynamics::{degree_sequence, indeterminacy_membership, IterateReport};
use crate::error::{Error, Result};
use crate::exactalg::{map_content, CycloField, CycloNumber, HomPoly, PolyMap, Rational, Scalar};
use crate::fmath;

/// Parameter `t`: exact rational or double.
#[derive(Debug, Clone, PartialEq)]
pub enum TParam {
    Exact(Rational),
    Float(f64),
}

impl TParam {
    pub fn to_f64(&self) -> f64 {
        match self {
            TParam::Exact(r) => crate::exactalg::rational_to_f64(r),
            TParam::Float(x) => *x,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DGParams<C> {
    pub t: TParam,
    pub a: C,
    pub b: C,
    pub c: C,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DGMap<C> {
    pub params: DGParams<C>,
    pub lift: PolyMap<C>,
    pub inverse_lift: PolyMap<C>,
}

/// Conductor `lcm(8, 2q)` needed for `t = p/q`.
pub fn dg_conductor(t: &Rational) -> BigInt {
    BigInt::from(8).lcm(&(t.denom() * 2))
}

/// Exact parameters in `Q(zeta_m)`.
pub fn dg_params_exact(t: &Rational, conductor_cap: u32) -> Result<DGParams<CycloNumber>> {
    let m_big = dg_conductor(t);
    let m = match m_big.to_u32() {
        Some(m) if m <= conductor_cap => m,
        _ => {
            return Err(Error::ConductorTooLarge { m: m_big.to_u64().unwrap_or(u64::MAX), cap: conductor_cap });
        }
    };
    let field = CycloField::new(m, conductor_cap)?;
    let two_q = t.denom() * 2;
    // e^{i pi t} = zeta_{2q}^p = zeta_m^{p m / 2q}
    let p_red = t.numer().mod_floor(&two_q).to_i64().expect("below conductor");
    let step = (BigInt::from(m) / &two_q).to_i64().expect("below conductor");
    let rot = CycloNumber::root_of_unity(&field, p_red * step);
    let zeta8 = CycloNumber::root_of_unity(&field, (m / 8) as i64);
    let a = CycloNumber::root_of_unity(&field, (m / 4) as i64);
    let u = zeta8.times(&rot);
    let b = u.times(&CycloNumber::from_i64(-2));
    let c = u.times(&CycloNumber::from_rational(&Rational::new(1.into(), 2.into())));
    Ok(DGParams { t: TParam::Exact(t.clone()), a, b, c })
}

pub fn dg_params_float(t: f64) -> DGParams<Complex64> {
    let u = fmath::cis_turns(0.125 + 0.5 * t);
    DGParams {
        t: TParam::Float(t),
        a: Complex64::new(0.0, 1.0),
        b: u * -2.0,
        c: u * 0.5,
    }
}

/// `(bc x(-cx + ac y + z), ac y(x - a y + ab z), ab z(bc x + y - b z))`.
pub fn dg_lift<C: Scalar>(a: &C, b: &C, c: &C) -> PolyMap<C> {
    let v = |i| HomPoly::<C>::var(i, 3);
    let lin = |x: C, y: C, z: C| HomPoly::linear(&[x, y, z]);
    let ab = a.times(b);
    let ac = a.times(c);
    let bc = b.times(c);
    let comps = vec![
        v(0).mul(&lin(c.negate(), ac.clone(), C::one())).scale(&bc),
        v(1).mul(&lin(C::one(), a.negate(), ab.clone())).scale(&ac),
        v(2).mul(&lin(bc.clone(), C::one(), b.negate())).scale(&ab),
    ];
    PolyMap::new(comps).expect("three quadratic components")
}

fn build<C: Scalar>(params: DGParams<C>) -> Result<DGMap<C>> {
    let inv = |x: &C| x.inverse().ok_or(Error::DivisionByZero);
    let lift = dg_lift(&params.a, &params.b, &params.c);
    let inverse_lift = dg_lift(&inv(&params.a)?, &inv(&params.b)?, &inv(&params.c)?);
    Ok(DGMap { params, lift, inverse_lift })
}

pub fn dg_build_exact(t: &Rational, conductor_cap: u32) -> Result<DGMap<CycloNumber>> {
    build(dg_params_exact(t, conductor_cap)?)
}

pub fn dg_build_float(t: f64) -> DGMap<Complex64> {
    build(dg_params_float(t)).expect("parameters are nonzero")
}

impl<C: Scalar> DGMap<C> {
    /// The fixed point `(0, 0, -1/(a b^2))` of the raw lift, checked by
    /// applying the lift.
    pub fn fixed_point(&self) -> Result<Vec<C>> {
        let DGParams { a, b, .. } = &self.params;
        let z = a.times(b).times(b).inverse().ok_or(Error::DivisionByZero)?.negate();
        let p = vec![C::zero(), C::zero(), z];
        let img = self.lift.eval(&p);
        let ok = if C::EXACT {
            img == p
        } else {
            img.iter().zip(&p).all(|(u, v)| fmath::cabs(u.minus(v).to_complex()) < 1e-10)
        };
        if !ok {
            return Err(Error::Verification("lift does not fix (0, 0, -1/(ab^2))".into()));
        }
        Ok(p)
    }

    /// `[a:1:0], [0:b:1], [1:0:c]` for the forward map, and the same with
    /// inverted parameters for the inverse, each checked on the raw lift and
    /// on the content-reduced lift. At `t = 1/2 (mod 1)` the lift has a
    /// linear common factor and the reduced map is linear; that case is an
    /// `InvalidArgument` error rather than a verification failure.
    pub fn indeterminacy_points(&self, forward: bool) -> Result<[Vec<C>; 3]> {
        let inv = |x: &C| x.inverse().ok_or(Error::DivisionByZero);
        let (a, b, c, lift) = if forward {
            (self.params.a.clone(), self.params.b.clone(), self.params.c.clone(), &self.lift)
        } else {
            (inv(&self.params.a)?, inv(&self.params.b)?, inv(&self.params.c)?, &self.inverse_lift)
        };
        let pts = [
            vec![a, C::one(), C::zero()],
            vec![C::zero(), b, C::one()],
            vec![C::one(), C::zero(), c],
        ];
        for p in &pts {
            if !indeterminacy_membership(lift, p, 1e-8)? {
                return Err(Error::Verification(format!("lift does not vanish at {p:?}")));
            }
        }
        if C::EXACT {
            let content = map_content(lift)?;
            if content.degree() > 0 {
                let reduced = lift.divide_by(&content)?;
                if let Some(p) = pts.iter().find(|p| !indeterminacy_membership(&reduced, p, 1e-8).unwrap_or(false)) {
                    return Err(Error::InvalidArgument(format!(
                        "degenerate parameter: the lift has the common factor {} and {p:?} is not \
                         indeterminate for the reduced map",
                        crate::exactalg::hompoly_to_text(&content)
                    )));
                }
            }
        }
        Ok(pts)
    }

    /// Image of a point of an invariant coordinate line, written in the
    /// line's chart: `[0:y:1]`, `[1:0:z]` or `[x:1:0]`.
    pub fn line_action(&self, line: Line, point: &[C]) -> Result<Vec<C>> {
        if point.len() != 3 {
            return Err(Error::Shape("points of P^2 have three coordinates".into()));
        }
        let zero_at = line.zero_coord();
        let on_line = if C::EXACT {
            point[zero_at].is_zero()
        } else {
            let z: Vec<Complex64> = point.iter().map(Scalar::to_complex).collect();
            fmath::cabs(z[zero_at]) <= 1e-12 * fmath::vnorm(&z)
        };
        if !on_line {
            return Err(Error::InvalidArgument(format!("point is not on the line {}", line.name())));
        }
        let img = self.lift.eval(point);
        let chart = line.chart_coord();
        match img[chart].inverse() {
            Some(s) => Ok(img.iter().map(|v| v.times(&s)).collect()),
            None => Ok(img),
        }
    }
}

/// The three invariant coordinate lines.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Line {
    X0,
    Y0,
    Z0,
}

impl Line {
    fn zero_coord(self) -> usize {
        match self {
            Line::X0 => 0,
            Line::Y0 => 1,
            Line::Z0 => 2,
        }
    }

    fn chart_coord(self) -> usize {
        match self {
            Line::X0 => 2,
            Line::Y0 => 0,
            Line::Z0 => 1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Line::X0 => "{x=0}",
            Line::Y0 => "{y=0}",
            Line::Z0 => "{z=0}",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StabilityVerdict {
    Stable,
    /// `s` is the least step with `t s = 1/2 (mod 1)`: the rotation on
    /// `{z=0}` carries `[-a:1:0]` to the indeterminacy point `[a:1:0]`.
    Unstable { s: u64 },
}

impl StabilityVerdict {
    pub fn is_stable(&self) -> bool {
        matches!(self, StabilityVerdict::Stable)
    }

    /// One-line justification of the verdict.
    pub fn explanation(&self, t: &Rational) -> String {
        match self {
            StabilityVerdict::Stable => format!(
                "denominator of {t} is odd: no s solves t*s = 1/2 mod 1, and |b| = 2 != 1/2 = |1/b| keeps \
                 orbits on {{x=0}} and {{y=0}} strictly monotone in modulus"
            ),
            StabilityVerdict::Unstable { s } => {
                format!("rotation by 2*pi*t on {{z=0}} maps [-a:1:0] to [a:1:0] after s = {s} steps")
            }
        }
    }

    /// First iterate whose degree drops. For `s = 1` (`t = 1/2 mod 1`) the
    /// three linear factors of the lift coincide since `abc = e^{2 i pi t} = -1`,
    /// so `f_t` is linear and the drop is immediate. Otherwise `f_t`
    /// contracts the line `{bc x + y - b z = 0}` to `[-a:1:0]`, which the
    /// rotation carries to the indeterminacy point `[a:1:0]` in `s` steps;
    /// the iterate after that loses degree.
    pub fn expected_first_drop(&self) -> Option<u64> {
        match self {
            StabilityVerdict::Stable => None,
            StabilityVerdict::Unstable { s: 1 } => Some(1),
            StabilityVerdict::Unstable { s } => Some(s + 2),
        }
    }
}

/// Unstable iff the reduced denominator of `t` is even.
pub fn dg_stability_predicate(t: &Rational) -> StabilityVerdict {
    let (p, q) = (t.numer(), t.denom());
    if q.is_odd() {
        return StabilityVerdict::Stable;
    }
    // t s = 1/2 mod 1  <=>  2 p s = q mod 2q
    let two_q = q * 2;
    let mut s = BigInt::one();
    while s <= two_q {
        let lhs: BigInt = p * &s * 2 - q;
        if lhs.mod_floor(&two_q).is_zero() {
            return StabilityVerdict::Unstable { s: s.to_u64().unwrap_or(u64::MAX) };
        }
        s += 1;
    }
    unreachable!("p is invertible mod q, so a solution exists below q")
}

#[derive(Debug, Clone, PartialEq)]
pub struct CrossValidation {
    pub t: Rational,
    pub verdict: StabilityVerdict,
    pub report: IterateReport,
    pub first_drop: Option<u32>,
    pub expected_first_drop: Option<u64>,
}

/// Runs the exact degree sequence up to `big_n` and checks it against the
/// predicate: an unstable verdict whose predicted drop index is within
/// range must show its first drop exactly there, otherwise no drop may
/// occur.
pub fn dg_cross_validate(t: &Rational, big_n: u32, degree_cap: u64, conductor_cap: u32) -> Result<CrossValidation> {
    let map = dg_build_exact(t, conductor_cap)?;
    let report = degree_sequence(&map.lift, big_n, degree_cap)?;
    let verdict = dg_stability_predicate(t);
    let first_drop = report.first_drop();
    let expected = verdict.expected_first_drop().filter(|&n| n <= big_n as u64);
    if first_drop.map(u64::from) != expected {
        return Err(Error::CrossCheck(format!(
            "t = {t}: predicate says {verdict:?} (first drop expected at {expected:?}) but exact degrees drop at {first_drop:?}"
        )));
    }
    let expected_first_drop = verdict.expected_first_drop();
    Ok(CrossValidation { t: t.clone(), verdict, report, first_drop, expected_first_drop })
}
