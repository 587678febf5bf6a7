//! Exact and numerical tools for the dynamics of rational self-maps of
//! projective space.
//!
//! The crate is `no_std` (it needs `alloc`). IO, report formats and the
//! command-line front end live in the `polardyn` companion crate.
//!
//! - [`exactalg`]: rationals, cyclotomic fields, homogeneous polynomials,
//!   composition and exact GCD.
//! - [`dynamics`]: iterate factorization `F^n = H_n * F_red_n`, degree
//!   sequences and polar-mass lower bounds.
//! - [`greenpot`]: double-precision Green potentials `g^(n)`.
//! - [`slicemass`]: trace-measure mass estimates on projective lines of P^2.
//! - [`dgfamily`]: the explicit birational quadratic family `f_t` on P^2.
#![cfg_attr(not(feature = "std"), no_std)]
// NaN must fail these range checks, so they are written negated on purpose.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod dgfamily;
pub mod dynamics;
mod error;
pub mod exactalg;
mod fmath;
pub mod greenpot;
pub mod slicemass;

pub use error::{Error, Result};

/// Default cap on `d^n` for exact iteration.
pub const DEFAULT_DEGREE_CAP: u64 = 64;
/// Default cap on the conductor of cyclotomic coefficient fields.
pub const DEFAULT_CONDUCTOR_CAP: u32 = 64;
