use num_complex::Complex64;
use polardyn_core::dgfamily::dg_build_exact;
use polardyn_core::dynamics::*;
use polardyn_core::exactalg::*;
use polardyn_core::greenpot::sample_sphere;
use proptest::prelude::*;

type Q = Rational;

const QUAD: [[u32; 3]; 6] = [[2, 0, 0], [1, 1, 0], [1, 0, 1], [0, 2, 0], [0, 1, 1], [0, 0, 2]];

/// Sparse integer quadratic maps of P^2; sparsity makes common factors in
/// the iterates reasonably frequent.
fn sparse_quadratic_map() -> impl Strategy<Value = PolyMap<Q>> {
    prop::collection::vec(prop::collection::vec(prop_oneof![3 => Just(0i64), 2 => -3i64..=3], 6), 3).prop_filter_map(
        "degenerate map",
        |rows| {
            let comps: Vec<HomPoly<Q>> = rows
                .iter()
                .map(|cs| {
                    let terms = QUAD
                        .iter()
                        .zip(cs)
                        .filter(|(_, &c)| c != 0)
                        .map(|(e, &c)| (Monomial::new(e.to_vec()), Q::from_i64(c)));
                    HomPoly::new(MPoly::from_terms(3, terms), 2).unwrap()
                })
                .collect();
            if comps.iter().any(HomPoly::is_zero) {
                return None;
            }
            let f = PolyMap::new(comps).ok()?;
            // Keep genuinely quadratic maps.
            if map_content(&f).ok()?.degree() > 0 {
                return None;
            }
            Some(f)
        },
    )
}

fn check_report(facs: &[IterateFactorization<Q>], report: &IterateReport) -> Result<(), TestCaseError> {
    let d = report.d;
    for fac in facs {
        prop_assert_eq!(fac.h.degree() + fac.f_red.degree(), d.pow(fac.n));
        prop_assert_eq!(map_content(&fac.f_red).unwrap().degree(), 0);
    }
    for w in report.rows.windows(2) {
        prop_assert!(w[1].mass_lower_bound >= w[0].mass_lower_bound);
        if !w[0].stable_so_far {
            prop_assert!(!w[1].stable_so_far);
        }
    }
    for i in 0..facs.len() {
        for j in i + 1..facs.len() {
            let m = facs[j].n - facs[i].n;
            prop_assert!(check_factor_divisibility(&facs[i], &facs[j], d, m).unwrap());
        }
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn random_map_reports_are_consistent(f in sparse_quadratic_map()) {
        let facs = iterate_all(&f, 3, 64).unwrap();
        let report = report_from(2, &facs).unwrap();
        check_report(&facs, &report)?;
    }

    #[test]
    fn family_reports_are_consistent(p in 0i64..12, q in 1i64..=6) {
        let t = Q::new(p.into(), q.into());
        let f = dg_build_exact(&t, 64).unwrap().lift;
        let facs = iterate_all(&f, 3, 64).unwrap();
        let report = report_from(2, &facs).unwrap();
        for fac in &facs {
            prop_assert_eq!(fac.h.degree() + fac.f_red.degree(), 2u32.pow(fac.n));
        }
        for w in report.rows.windows(2) {
            prop_assert!(w[1].mass_lower_bound >= w[0].mass_lower_bound);
            prop_assert!(w[0].stable_so_far || !w[1].stable_so_far);
        }
    }
}

#[test]
fn exact_and_float_iterates_agree() {
    let points: Vec<Vec<Complex64>> = sample_sphere(20, 11, 3);
    for (p, q) in [(1, 3), (1, 4), (1, 2), (2, 5)] {
        let t = Q::new(p.into(), q.into());
        let f = dg_build_exact(&t, 64).unwrap().lift;
        for fac in iterate_all(&f, 4, 64).unwrap() {
            let err = float_cross_check(&f, &fac, &points);
            assert!(err < 1e-8, "t = {p}/{q}, n = {}: relative error {err:e}", fac.n);
        }
    }
}

#[test]
fn sparse_unstable_map_has_positive_bound() {
    // [x0 x1 : x1^2 : x0 x2] contracts {x1 = 0} onto its own
    // indeterminacy point [0:0:1].
    let v = |i| HomPoly::<Q>::var(i, 3);
    let f = PolyMap::new(vec![v(0).mul(&v(1)), v(1).pow(2), v(0).mul(&v(2))]).unwrap();
    let facs = iterate_all(&f, 3, 64).unwrap();
    let report = report_from(2, &facs).unwrap();
    assert_eq!(report.first_drop(), Some(2));
    assert_eq!(report.rows[1].deg_fn, 3);
    assert!(report.rows[2].mass_lower_bound > Q::from_i64(0));
    check_report(&facs, &report).unwrap();
}

#[test]
fn degree_cap_is_enforced() {
    let f = dg_build_exact(&Q::new(1.into(), 3.into()), 64).unwrap().lift;
    assert!(matches!(degree_sequence(&f, 7, 64), Err(polardyn_core::Error::DegreeCapExceeded { .. })));
}
