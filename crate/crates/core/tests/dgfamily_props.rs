use num_complex::Complex64;
use polardyn_core::dgfamily::*;
use polardyn_core::exactalg::{Rational, Scalar};
use polardyn_core::greenpot::sample_sphere;
use proptest::prelude::*;

const DENOMS: [i64; 14] = [1, 2, 3, 4, 5, 6, 7, 8, 10, 12, 16, 20, 24, 32];

fn unit(z: &[Complex64]) -> Vec<Complex64> {
    let n = z.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    z.iter().map(|c| c / n).collect()
}

/// `|<u, v>|` for unit vectors: 1 exactly when they span the same line.
fn alignment(u: &[Complex64], v: &[Complex64]) -> f64 {
    u.iter().zip(v).map(|(a, b)| a.conj() * b).sum::<Complex64>().norm()
}

#[test]
fn lift_inverts_inverse_lift_projectively() {
    for t in [0.0, 0.13, 0.3, 0.5, 0.77] {
        let m = dg_build_float(t);
        for z in sample_sphere(20, 17, 3) {
            let w = m.lift.eval(&m.inverse_lift.eval(&z));
            let a = alignment(&unit(&w), &z);
            assert!((1.0 - a).abs() < 1e-6, "t = {t}: alignment {a}");
            let w = m.inverse_lift.eval(&m.lift.eval(&z));
            assert!((1.0 - alignment(&unit(&w), &z)).abs() < 1e-6);
        }
    }
}

#[test]
fn bc_is_a_rotated_unit() {
    for (p, q) in [(0, 1), (1, 2), (1, 3), (2, 5), (3, 8), (7, 12)] {
        let t = Rational::new(p.into(), q.into());
        let params = dg_params_exact(&t, 64).unwrap();
        let bc = params.b.times(&params.c).to_complex();
        let want = Complex64::new(0.0, -1.0) * Complex64::from_polar(1.0, std::f64::consts::TAU * p as f64 / q as f64);
        assert!((bc - want).norm() < 1e-12, "t = {p}/{q}: {bc} vs {want}");
        assert!((bc.norm() - 1.0).abs() < 1e-12);
    }
    let params = dg_params_float(0.3);
    let want = Complex64::new(0.0, -1.0) * Complex64::from_polar(1.0, std::f64::consts::TAU * 0.3);
    assert!((params.b * params.c - want).norm() < 1e-12);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10))]

    #[test]
    fn indeterminacy_points_verify(p in 0i64..64, qi in 0usize..DENOMS.len()) {
        let t = Rational::new(p.into(), DENOMS[qi].into());
        let twice = &t * Rational::from_i64(2);
        // t = 1/2 mod 1 is the degenerate linear case.
        prop_assume!(!(twice.is_integer() && twice.to_integer() % 2 != 0.into()));
        let m = dg_build_exact(&t, 64).unwrap();
        prop_assert_eq!(m.indeterminacy_points(true).unwrap().len(), 3);
        prop_assert_eq!(m.indeterminacy_points(false).unwrap().len(), 3);
    }

    #[test]
    fn exact_fixed_point_is_fixed(p in 0i64..64, qi in 0usize..DENOMS.len()) {
        let t = Rational::new(p.into(), DENOMS[qi].into());
        let m = dg_build_exact(&t, 64).unwrap();
        let z = m.fixed_point().unwrap();
        let img = m.lift.eval(&z);
        // image = lambda * z with lambda = img[2] / z[2]
        let lambda = img[2].times(&z[2].inverse().unwrap());
        for (u, v) in img.iter().zip(&z) {
            prop_assert_eq!(u.clone(), lambda.times(v));
        }
        prop_assert!((z[2].to_complex().norm() - 0.25).abs() < 1e-12);
    }
}

#[test]
fn odd_denominators_are_stable_and_even_ones_are_not() {
    for q in 1..=40i64 {
        for p in 0..q {
            let t = Rational::new(p.into(), q.into());
            let verdict = dg_stability_predicate(&t);
            assert_eq!(verdict.is_stable(), t.denom() % 2 == 1.into(), "t = {t}");
        }
    }
}

#[test]
fn cross_validation_agrees_on_small_parameters() {
    for (p, q) in [(0, 1), (1, 6), (5, 6), (1, 7)] {
        let cv = dg_cross_validate(&Rational::new(p.into(), q.into()), 3, 64, 64).unwrap();
        assert_eq!(cv.report.rows.len(), 3);
    }
}
