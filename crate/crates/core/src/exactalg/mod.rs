//! Exact algebra: rationals, cyclotomic fields, homogeneous polynomials,
//! composition, GCD and the text format.

pub mod cyclo;
pub mod gcd;
pub mod hompoly;
pub mod mpoly;
pub mod scalar;
pub mod text;
pub mod unipoly;

pub use cyclo::{cyclo_add, cyclo_inv, cyclo_mul, cyclotomic_polynomial, totient, CycloField, CycloNumber};
pub use gcd::{map_content, poly_divide_exact, poly_gcd, poly_gcd_with, GcdStrategy};
pub use hompoly::{poly_compose, HomPoly, PolyMap};
pub use mpoly::{MPoly, Monomial};
pub use scalar::{parse_decimal_exact, parse_rational, rational_text, rational_to_f64, Rational, Scalar};
pub use text::{hompoly_from_text, hompoly_to_text, parse_map_expr, polymap_from_text, polymap_to_text};
pub use unipoly::UniPoly;
