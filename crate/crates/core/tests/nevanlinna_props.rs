use proptest::prelude::*;

use holocurve::nevanlinna::{counting_p1, divisor_p1, RadiusGrid, Truncation};
use holocurve::symbolic::{GaussianRational, Polynomial};

fn from_roots(roots: &[(i64, i64, u32)]) -> Polynomial {
    roots.iter().fold(Polynomial::one(1), |acc, &(re, im, m)| {
        let lin = Polynomial::univariate(&[
            GaussianRational::from_parts((-re, 1), (-im, 1)),
            GaussianRational::from_integer(1),
        ]);
        &acc * &lin.pow(m)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn truncated_counting_is_ordered(
        roots in proptest::collection::btree_map((-4i64..=4, -4i64..=4), 1u32..=4, 1..5),
        r in 1.5f64..1e4,
    ) {
        let roots: Vec<(i64, i64, u32)> = roots.into_iter().map(|((a, b), m)| (a, b, m)).collect();
        let div = divisor_p1(&from_roots(&roots));
        prop_assert_eq!(div.degree(), roots.iter().map(|r| r.2).sum::<u32>());
        let levels: Vec<f64> = (1..=4).map(|m| counting_p1(&div, r, Truncation::Level(m))).collect();
        let full = counting_p1(&div, r, Truncation::Infinite);
        let eps = 1e-12 * (1.0 + full.abs());
        for w in levels.windows(2) {
            prop_assert!(w[0] <= w[1] + eps);
        }
        prop_assert!(levels[3] <= full + eps);
        for (m, v) in levels.iter().enumerate() {
            prop_assert!(*v <= (m + 1) as f64 * levels[0] + eps);
        }
    }

    #[test]
    fn counting_matches_closed_form(
        roots in proptest::collection::btree_map((-4i64..=4, -4i64..=4), 1u32..=3, 1..4),
        r in 10.0f64..1e3,
    ) {
        // every root has modulus < 10 <= r
        let roots: Vec<(i64, i64, u32)> = roots.into_iter().map(|((a, b), m)| (a, b, m)).collect();
        let div = divisor_p1(&from_roots(&roots));
        let expected: f64 = roots
            .iter()
            .map(|&(a, b, m)| {
                let t = ((a * a + b * b) as f64).sqrt();
                let inner = if t == 0.0 { r.ln() } else { (r / t).ln() - (1.0 / t).ln().max(0.0) };
                f64::from(m) * inner
            })
            .sum();
        prop_assert!((counting_p1(&div, r, Truncation::Infinite) - expected).abs() < 1e-8 * (1.0 + expected.abs()));
    }

    #[test]
    fn geometric_grid_is_increasing(min in 1.5f64..100.0, decades in 1u32..4, per in 1u32..6) {
        let g = RadiusGrid::geometric(min, min * 10f64.powi(decades as i32), per).unwrap();
        prop_assert_eq!(g.len() as u32, decades * per + 1);
        prop_assert!(g.radii().windows(2).all(|w| w[0] < w[1]));
    }
}

#[test]
fn truncation_round_trip() {
    for t in [Truncation::Level(1), Truncation::Level(7), Truncation::Infinite] {
        let s = serde_json::to_string(&t).unwrap();
        assert_eq!(serde_json::from_str::<Truncation>(&s).unwrap(), t);
        assert_eq!(t.to_string().parse::<Truncation>().unwrap(), t);
    }
    assert!(Truncation::level(0).is_err());
    assert!(RadiusGrid::new(vec![2.0, 2.0]).is_err());
    assert!(RadiusGrid::new(vec![0.5, 2.0]).is_err());
}
