//! Parsers for command-line values.

use num_complex::Complex64;
use polardyn_core::dgfamily::TParam;
use polardyn_core::exactalg::parse_rational;

use crate::CliError;

/// `p/q` is exact; anything else must be a decimal float literal.
pub fn parse_t(s: &str) -> Result<TParam, CliError> {
    let s = s.trim();
    if s.contains('/') {
        let r = parse_rational(s).map_err(|e| CliError::usage(format!("bad --t `{s}`: {e}")))?;
        return Ok(TParam::Exact(r));
    }
    match s.parse::<f64>() {
        Ok(x) if x.is_finite() => Ok(TParam::Float(x)),
        _ => Err(CliError::usage(format!("bad --t `{s}`: expected p/q or a decimal number"))),
    }
}

/// `1.5`, `-2i`, `i`, `0.3-0.25i`, `1e-3+2e-1i`.
pub fn parse_complex(s: &str) -> Result<Complex64, CliError> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || CliError::usage(format!("bad complex number `{s}`"));
    if s.is_empty() {
        return Err(bad());
    }
    let Some(body) = s.strip_suffix('i') else {
        return s.parse::<f64>().map(|re| Complex64::new(re, 0.0)).map_err(|_| bad());
    };
    // split before the last sign that is not at the start or after an exponent marker
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("0", body),
    };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        x => x.parse::<f64>().map_err(|_| bad())?,
    };
    let re = re.parse::<f64>().map_err(|_| bad())?;
    Ok(Complex64::new(re, im))
}

pub fn parse_point(s: &str) -> Result<Vec<Complex64>, CliError> {
    s.split(',').map(parse_complex).collect()
}

pub fn parse_list(s: &str) -> Result<Vec<f64>, CliError> {
    s.split(',')
        .map(|x| {
            x.trim()
                .parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| CliError::usage(format!("bad number `{x}` in list")))
        })
        .collect()
}
