//! Command-line front end: argument definitions, subcommands and output
//! writers. Exit codes: 0 success, 1 usage error, 2 resource cap, 3
//! internal cross-check failure.

// NaN must fail these range checks, so they are written negated on purpose.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod commands;
pub mod output;
pub mod parse;

use std::fmt;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use polardyn_core::Error;

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        CliError { code: 1, message: message.into() }
    }

    pub fn io(path: &std::path::Path, e: std::io::Error) -> Self {
        CliError { code: 1, message: format!("{}: {e}", path.display()) }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::DegreeCapExceeded { .. } | Error::ConductorTooLarge { .. } => 2,
            Error::CrossCheck(_) | Error::Verification(_) => 3,
            _ => 1,
        };
        CliError { code, message: e.to_string() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Pgm,
}

/// Exact and numerical experiments with rational self-maps of P^k and the
/// quadratic birational family f_t on P^2.
///
/// A parameter t written p/q selects exact cyclotomic arithmetic; a
/// decimal t selects double precision. The two are never converted into
/// each other.
#[derive(Debug, Parser)]
#[command(name = "polardyn", version)]
pub struct RunConfig {
    /// Largest d^n allowed in exact iteration.
    #[arg(long, global = true, default_value_t = polardyn_core::DEFAULT_DEGREE_CAP)]
    pub degree_cap: u64,
    /// Largest cyclotomic conductor allowed for exact t.
    #[arg(long, global = true, default_value_t = polardyn_core::DEFAULT_CONDUCTOR_CAP)]
    pub conductor_cap: u32,
    /// Seed for sampling points and lines.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Output file (stdout when absent).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Output format; each subcommand has its own default.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact degree sequence deg f^n, n = 1..N, with mass bounds 1 - deg/d^n.
    Degrees(DegreesArgs),
    /// Stability verdict for exact t, optionally cross-checked against exact degrees.
    Stability(StabilityArgs),
    /// Coefficients, fixed point, indeterminacy points and verdict for f_t.
    Family(FamilyArgs),
    /// Green potentials g^(n) at a point, on sphere samples, or on a slice heatmap.
    Green(GreenArgs),
    /// Mean line masses of {g^(n) < -M} around a parameter t*.
    Mass(MassArgs),
}

#[derive(Debug, Args)]
pub struct MapSource {
    /// Family parameter: p/q (exact) or a decimal (float).
    #[arg(long, allow_hyphen_values = true)]
    pub t: Option<String>,
    /// Explicit map, e.g. "x^2,y^2,z^2"; coefficients may use i and decimals.
    #[arg(long, conflicts_with = "t")]
    pub map: Option<String>,
}

#[derive(Debug, Args)]
pub struct DegreesArgs {
    #[command(flatten)]
    pub source: MapSource,
    /// Last iterate.
    #[arg(long = "N")]
    pub big_n: u32,
}

#[derive(Debug, Args)]
pub struct StabilityArgs {
    /// Parameter p/q.
    #[arg(long, allow_hyphen_values = true)]
    pub t: String,
    /// Cross-validate against exact degrees up to this iterate.
    #[arg(long = "N")]
    pub big_n: Option<u32>,
}

#[derive(Debug, Args)]
pub struct FamilyArgs {
    /// Parameter: p/q (exact) or a decimal (float).
    #[arg(long, allow_hyphen_values = true)]
    pub t: String,
    /// Also cross-validate the verdict up to this iterate (exact t only).
    #[arg(long = "N")]
    pub big_n: Option<u32>,
}

#[derive(Debug, Args)]
pub struct GreenArgs {
    #[command(flatten)]
    pub source: MapSource,
    /// Number of iterates n in g^(n).
    #[arg(long, default_value_t = 8)]
    pub n: u32,
    /// Evaluate at this point, comma-separated complex coordinates.
    #[arg(long, allow_hyphen_values = true)]
    pub point: Option<String>,
    /// Number of Fubini-Study samples (the default mode).
    #[arg(long, default_value_t = 1000)]
    pub samples: usize,
    /// Heatmap slice base point z0 in z = z0 + (u + iv) dir.
    #[arg(long, allow_hyphen_values = true, requires = "slice_dir")]
    pub slice_base: Option<String>,
    /// Heatmap slice direction.
    #[arg(long, allow_hyphen_values = true, requires = "slice_base")]
    pub slice_dir: Option<String>,
    /// Heatmap covers u, v in [-half_width, half_width].
    #[arg(long, default_value_t = 2.0)]
    pub half_width: f64,
    /// Heatmap cells per side.
    #[arg(long, default_value_t = 256)]
    pub resolution: usize,
    /// Heatmap gray levels span [-clip, 0].
    #[arg(long, default_value_t = 40.0)]
    pub clip: f64,
}

#[derive(Debug, Args)]
pub struct MassArgs {
    /// Central parameter t*: p/q (exact bound available) or a decimal.
    #[arg(long, allow_hyphen_values = true, visible_alias = "sweep")]
    pub t: String,
    /// Offsets added to t*, comma-separated.
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub offsets: String,
    /// Number of iterates n in g^(n).
    #[arg(long, default_value_t = 6)]
    pub n: u32,
    /// Sublevel threshold: cells with g^(n) < -M.
    #[arg(long = "M", default_value_t = 3.0)]
    pub big_m: f64,
    /// Random lines per parameter.
    #[arg(long, default_value_t = 16)]
    pub lines: usize,
    /// Grid cells per side of each line chart.
    #[arg(long, default_value_t = 256)]
    pub resolution: usize,
    /// Chart half-width.
    #[arg(long, default_value_t = 2.5)]
    pub radius: f64,
    /// |w| around which the two charts of a line hand over.
    #[arg(long, default_value_t = 1.0)]
    pub split: f64,
    /// g^(n) is clamped at -clip before differencing.
    #[arg(long, default_value_t = 40.0)]
    pub clip: f64,
    /// Skip the exact degree computation behind the algebraic bound.
    #[arg(long)]
    pub no_exact_bound: bool,
}

/// Parses arguments, mapping clap failures to exit code 1 (help and
/// version print and succeed).
pub fn parse_args<I, T>(args: I) -> Result<RunConfig, clap::Error>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    RunConfig::try_parse_from(args)
}

pub fn run(cfg: &RunConfig) -> Result<(), CliError> {
    match &cfg.command {
        Command::Degrees(a) => commands::degrees(cfg, a),
        Command::Stability(a) => commands::stability(cfg, a),
        Command::Family(a) => commands::family(cfg, a),
        Command::Green(a) => commands::green(cfg, a),
        Command::Mass(a) => commands::mass(cfg, a),
    }
}
