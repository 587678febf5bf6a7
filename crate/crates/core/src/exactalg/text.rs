//! Text forms of polynomials and maps.
//!
//! A homogeneous polynomial is written term by term in descending graded-lex
//! order, `coeff * x0^e0 x1^e1 x2^e2`, terms joined by ` + `. The zero
//! polynomial is a single zero-coefficient term whose exponents record the
//! degree. A map is one component per line.
//!
//! [`parse_map_expr`] accepts a friendlier infix syntax over the Gaussian
//! rationals, e.g. `x^2 - 0.5*i*y*z, y^2, z^2`.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::cyclo::{CycloField, CycloNumber};
use super::hompoly::{HomPoly, PolyMap};
use super::mpoly::{MPoly, Monomial};
use super::scalar::{parse_decimal_exact, Scalar};
use crate::error::{Error, Result};

fn monomial_text(m: &Monomial) -> String {
    let parts: Vec<String> = m.exps().iter().enumerate().map(|(i, e)| format!("x{i}^{e}")).collect();
    parts.join(" ")
}

pub fn hompoly_to_text<C: Scalar>(p: &HomPoly<C>) -> String {
    if p.is_zero() {
        let mut e = alloc::vec![0u32; p.nvars()];
        e[0] = p.degree();
        return format!("{} * {}", C::zero().coeff_text(), monomial_text(&Monomial::new(e)));
    }
    let terms: Vec<String> = p
        .terms_desc()
        .map(|(m, c)| format!("{} * {}", c.coeff_text(), monomial_text(m)))
        .collect();
    terms.join(" + ")
}

fn parse_monomial(s: &str) -> Result<Monomial> {
    let bad = || Error::Parse(format!("bad monomial `{s}`"));
    let mut exps = Vec::new();
    for (i, factor) in s.split_whitespace().enumerate() {
        let (var, e) = factor.split_once('^').ok_or_else(bad)?;
        if var != format!("x{i}") {
            return Err(bad());
        }
        exps.push(e.parse::<u32>().map_err(|_| bad())?);
    }
    if exps.is_empty() {
        return Err(bad());
    }
    Ok(Monomial::new(exps))
}

pub fn hompoly_from_text<C: Scalar>(s: &str) -> Result<HomPoly<C>> {
    let mut shape: Option<(usize, u32)> = None;
    let mut terms = Vec::new();
    for term in s.trim().split(" + ") {
        let (coeff, mono) = term
            .rsplit_once(" * ")
            .ok_or_else(|| Error::Parse(format!("bad term `{term}`")))?;
        let m = parse_monomial(mono)?;
        let (n, d) = *shape.get_or_insert((m.exps().len(), m.degree()));
        if m.exps().len() != n || m.degree() != d {
            return Err(Error::Parse(format!("term `{term}` does not match degree {d} in {n} vars")));
        }
        let c = C::parse_coeff(coeff)?;
        if !c.is_zero() {
            terms.push((m, c));
        }
    }
    let (n, d) = shape.ok_or_else(|| Error::Parse("empty polynomial".into()))?;
    HomPoly::new(MPoly::from_terms(n, terms), d)
}

pub fn polymap_to_text<C: Scalar>(f: &PolyMap<C>) -> String {
    let lines: Vec<String> = f.components().iter().map(hompoly_to_text).collect();
    lines.join("\n")
}

pub fn polymap_from_text<C: Scalar>(s: &str) -> Result<PolyMap<C>> {
    let comps = s
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(hompoly_from_text)
        .collect::<Result<Vec<_>>>()?;
    PolyMap::new(comps)
}

/// Parses comma-separated infix components in the variables `x, y, z`
/// (or `x0, x1, ...`). Numbers are read exactly, decimals included; `i`
/// is the imaginary unit. Products need an explicit `*`.
pub fn parse_map_expr(s: &str) -> Result<PolyMap<CycloNumber>> {
    let parts: Vec<&str> = s.split(',').collect();
    let n = parts.len();
    if n < 2 {
        return Err(Error::Parse("a map needs at least two components".into()));
    }
    let field = CycloField::new(4, 4)?;
    let polys = parts
        .iter()
        .map(|p| ExprParser::new(p, n, &field).parse())
        .collect::<Result<Vec<_>>>()?;
    let degree = polys
        .iter()
        .find_map(|p| p.total_degree().filter(|_| !p.is_zero()))
        .ok_or(Error::ZeroMap)?;
    let comps = polys
        .into_iter()
        .zip(parts.iter())
        .map(|(p, src)| {
            HomPoly::new(p, degree).map_err(|_| {
                Error::Parse(format!("component `{}` is not homogeneous of degree {degree}", src.trim()))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    PolyMap::new(comps)
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(String),
    Var(usize),
    I,
    Op(char),
}

struct ExprParser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    nvars: usize,
    field: &'a alloc::sync::Arc<CycloField>,
    err: Option<Error>,
    src: &'a str,
}

impl<'a> ExprParser<'a> {
    fn new(src: &'a str, nvars: usize, field: &'a alloc::sync::Arc<CycloField>) -> Self {
        let mut p = ExprParser { toks: Vec::new(), pos: 0, nvars, field, err: None, src };
        p.tokenize();
        p
    }

    fn tokenize(&mut self) {
        let chars: Vec<char> = self.src.chars().collect();
        let mut k = 0;
        while k < chars.len() {
            let ch = chars[k];
            if ch.is_whitespace() {
                k += 1;
            } else if ch.is_ascii_digit() || ch == '.' {
                let start = k;
                while k < chars.len() && (chars[k].is_ascii_digit() || chars[k] == '.') {
                    k += 1;
                }
                self.toks.push(Tok::Num(chars[start..k].iter().collect()));
            } else if "+-*/^()".contains(ch) {
                self.toks.push(Tok::Op(ch));
                k += 1;
            } else if ch == 'i' {
                self.toks.push(Tok::I);
                k += 1;
            } else if ch == 'x' && k + 1 < chars.len() && chars[k + 1].is_ascii_digit() {
                let start = k + 1;
                k += 1;
                while k < chars.len() && chars[k].is_ascii_digit() {
                    k += 1;
                }
                let idx: String = chars[start..k].iter().collect();
                self.push_var(idx.parse().unwrap_or(usize::MAX));
            } else if let Some(idx) = "xyz".find(ch) {
                self.push_var(idx);
                k += 1;
            } else {
                self.fail(format!("unexpected `{ch}`"));
                return;
            }
        }
    }

    fn push_var(&mut self, idx: usize) {
        if idx >= self.nvars {
            self.fail(format!("variable index {idx} out of range for {} variables", self.nvars));
        }
        self.toks.push(Tok::Var(idx));
    }

    fn fail(&mut self, msg: String) {
        if self.err.is_none() {
            self.err = Some(Error::Parse(format!("in `{}`: {msg}", self.src.trim())));
        }
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn parse(mut self) -> Result<MPoly<CycloNumber>> {
        if let Some(e) = self.err.take() {
            return Err(e);
        }
        let p = self.sum();
        if self.pos != self.toks.len() {
            self.fail("trailing input".into());
        }
        match self.err {
            Some(e) => Err(e),
            None => Ok(p),
        }
    }

    fn sum(&mut self) -> MPoly<CycloNumber> {
        let mut acc = if self.eat('-') {
            self.product().neg()
        } else {
            self.eat('+');
            self.product()
        };
        loop {
            if self.eat('+') {
                acc = acc.add(&self.product());
            } else if self.eat('-') {
                acc = acc.sub(&self.product());
            } else {
                return acc;
            }
        }
    }

    fn product(&mut self) -> MPoly<CycloNumber> {
        let mut acc = self.power();
        loop {
            if self.eat('*') {
                acc = acc.mul(&self.power());
            } else if self.eat('/') {
                let den = self.power();
                match den.is_constant().then(|| den.coeff(&Monomial::one(self.nvars)).cloned()).flatten() {
                    Some(c) if !c.is_zero() => acc = acc.scale(&c.inverse().expect("nonzero")),
                    _ => self.fail("division only by nonzero constants".into()),
                }
            } else {
                return acc;
            }
        }
    }

    fn power(&mut self) -> MPoly<CycloNumber> {
        let base = self.atom();
        if self.eat('^') {
            match self.toks.get(self.pos).cloned() {
                Some(Tok::Num(s)) if s.bytes().all(|b| b.is_ascii_digit()) => {
                    self.pos += 1;
                    match s.parse::<u32>() {
                        Ok(e) => return base.pow(e),
                        Err(_) => self.fail(format!("exponent `{s}` too large")),
                    }
                }
                _ => self.fail("exponent must be a nonnegative integer".into()),
            }
        }
        base
    }

    fn atom(&mut self) -> MPoly<CycloNumber> {
        let n = self.nvars;
        match self.toks.get(self.pos).cloned() {
            Some(Tok::Num(s)) => {
                self.pos += 1;
                match parse_decimal_exact(&s) {
                    Ok(r) => MPoly::constant(CycloNumber::new(self.field, &[r]), n),
                    Err(e) => {
                        self.err.get_or_insert(e);
                        MPoly::zero(n)
                    }
                }
            }
            Some(Tok::Var(i)) => {
                self.pos += 1;
                MPoly::var(i, n)
            }
            Some(Tok::I) => {
                self.pos += 1;
                MPoly::constant(CycloNumber::root_of_unity(self.field, 1), n)
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let inner = self.sum();
                if !self.eat(')') {
                    self.fail("missing `)`".into());
                }
                inner
            }
            Some(Tok::Op('-')) => {
                self.pos += 1;
                self.atom().neg()
            }
            _ => {
                self.fail("expected a number, variable, `i` or `(`".into());
                self.pos = self.toks.len();
                MPoly::zero(n)
            }
        }
    }
}
