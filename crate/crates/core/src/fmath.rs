//! Thin wrappers over `libm` so results do not depend on whether `std` is linked.

use num_complex::Complex64;

#[inline]
pub(crate) fn ln(x: f64) -> f64 {
    libm::log(x)
}

#[inline]
pub(crate) fn sqrt(x: f64) -> f64 {
    libm::sqrt(x)
}

#[inline]
pub(crate) fn exp(x: f64) -> f64 {
    libm::exp(x)
}

#[inline]
pub(crate) fn pow(x: f64, y: f64) -> f64 {
    libm::pow(x, y)
}

#[inline]
pub(crate) fn cabs(z: Complex64) -> f64 {
    libm::hypot(z.re, z.im)
}

/// `e^{2 pi i x}`, with the angle reduced mod 1 first.
pub(crate) fn cis_turns(x: f64) -> Complex64 {
    let r = x - libm::floor(x);
    let a = 2.0 * core::f64::consts::PI * r;
    Complex64::new(libm::cos(a), libm::sin(a))
}

/// Euclidean norm of a complex vector.
pub(crate) fn vnorm(v: &[Complex64]) -> f64 {
    // scale to avoid overflow/underflow in the sum of squares
    let scale = v.iter().map(|z| z.re.abs().max(z.im.abs())).fold(0.0, f64::max);
    if scale == 0.0 || !scale.is_finite() {
        return scale;
    }
    let s: f64 = v
        .iter()
        .map(|z| {
            let (a, b) = (z.re / scale, z.im / scale);
            a * a + b * b
        })
        .sum();
    scale * sqrt(s)
}
