mod common;

use num_complex::Complex64;
use proptest::prelude::*;

use holocurve::symbolic::gcd::{gcd, square_free_decomposition};
use holocurve::symbolic::{
    generalized_wronskian, is_linearly_independent, parse_polynomial, GaussianRational, Polynomial,
};
use holocurve::words::enumerate_admissible_full_sets;

use common::{coefficient_rank, derivative_at, gint};

fn poly(p: usize) -> impl Strategy<Value = Polynomial> {
    proptest::collection::vec((proptest::collection::vec(0u32..=3, p), -3i64..=3, -3i64..=3), 1..5).prop_map(
        move |terms| Polynomial::from_terms(p, terms.into_iter().map(|(e, re, im)| (e, gint(re, im)))),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn display_parse_round_trip(f in poly(2)) {
        let back = parse_polynomial(&f.to_string(), 2).unwrap();
        prop_assert_eq!(back, f);
    }

    #[test]
    fn derivatives_match_termwise_oracle(f in poly(2), a in 0u32..=2, b in 0u32..=2, x in -1.0f64..1.0, y in -1.0f64..1.0) {
        let w = holocurve::words::Word::from_multi_index(&[a, b]);
        let z = [Complex64::new(x, y), Complex64::new(y, -x)];
        let lib = f.differentiate(&w).eval(&z);
        let oracle = derivative_at(&f, &[a, b], &z);
        prop_assert!((lib - oracle).norm() <= 1e-9 * (1.0 + oracle.norm()));
    }

    #[test]
    fn gcd_divides_both(f in poly(1), g in poly(1), h in poly(1)) {
        prop_assume!(!h.is_zero());
        let a = &f * &h;
        let b = &g * &h;
        prop_assume!(!a.is_zero() && !b.is_zero());
        let d = gcd(&a, &b);
        prop_assert!(a.div_exact(&d).is_some());
        prop_assert!(b.div_exact(&d).is_some());
        prop_assert!(d.div_exact(&h.monic()).is_some());
    }

    #[test]
    fn square_free_parts_rebuild(f in poly(1)) {
        prop_assume!(!f.is_constant());
        let mut prod = Polynomial::one(1);
        for sf in square_free_decomposition(&f) {
            prod = &prod * &sf.factor.pow(sf.multiplicity);
        }
        prop_assert!(prod.div_exact(&f).is_some_and(|q| q.is_constant()));
    }

    #[test]
    fn scaling_identity(fs in proptest::collection::vec(poly(2), 3), g in poly(2)) {
        let g_fs: Vec<Polynomial> = fs.iter().map(|f| &g * f).collect();
        for set in enumerate_admissible_full_sets(2, 2, None).unwrap() {
            let lhs = generalized_wronskian(&set, &g_fs).unwrap();
            let rhs = &g.pow(3) * &generalized_wronskian(&set, &fs).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn independence_matches_rank_oracle(fs in proptest::collection::vec(poly(2), 1..4)) {
        let ind = is_linearly_independent(&fs).unwrap();
        prop_assert_eq!(ind.independent, coefficient_rank(&fs) == fs.len());
    }
}

#[test]
fn exact_scalar_arithmetic() {
    let a = GaussianRational::from_parts((1, 2), (-3, 4));
    let inv = a.inv().unwrap();
    assert_eq!(&a * &inv, GaussianRational::from_integer(1));
    assert_eq!(GaussianRational::i().pow(2), GaussianRational::from_integer(-1));
}
