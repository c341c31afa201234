mod common;

use proptest::prelude::*;

use holocurve::words::{enumerate_admissible_full_sets, witness_candidates, OperatorSet, Word};

use common::{brute_is_admissible, brute_is_full};

fn letters(set: &OperatorSet) -> Vec<Vec<u16>> {
    set.words().iter().map(|w| w.letters().to_vec()).collect()
}

proptest! {
    #[test]
    fn enumerated_sets_are_admissible_and_full(p in 1usize..=3, n in 0usize..=5) {
        let sets = enumerate_admissible_full_sets(p, n, None).unwrap();
        prop_assert!(!sets.is_empty());
        for s in &sets {
            let ws = letters(s);
            prop_assert_eq!(ws.len(), n + 1);
            prop_assert!(brute_is_full(&ws));
            prop_assert!(brute_is_admissible(&ws));
        }
    }

    #[test]
    fn order_cap_filters(p in 1usize..=3, n in 1usize..=4, cap in 1usize..=3) {
        let all = enumerate_admissible_full_sets(p, n, None).unwrap();
        let capped = enumerate_admissible_full_sets(p, n, Some(cap)).unwrap();
        let expected: Vec<_> = all.into_iter().filter(|s| s.max_order() <= cap).collect();
        prop_assert_eq!(capped, expected);
    }

    #[test]
    fn witness_candidates_hold_every_letter(p in 1usize..=3, n in 1usize..=5) {
        for s in witness_candidates(p, n).unwrap() {
            for l in 1..=p as u16 {
                prop_assert!(s.contains(&Word::single(l)));
            }
            prop_assert!(s.max_order() <= (n + 1).saturating_sub(p).max(1));
        }
    }

    #[test]
    fn word_literals_round_trip(mut ls in proptest::collection::vec(1u16..=9, 0..6)) {
        let w = Word::new(ls.clone());
        ls.sort_unstable();
        prop_assert_eq!(w.letters(), &ls[..]);
        let back: Word = w.to_string().parse().unwrap();
        prop_assert_eq!(back, w);
    }
}

#[test]
fn known_counts() {
    // p = 1 has exactly one full set, the classical Wronskian
    assert_eq!(enumerate_admissible_full_sets(1, 4, None).unwrap().len(), 1);
    let p2n2: Vec<String> =
        enumerate_admissible_full_sets(2, 2, None).unwrap().iter().map(ToString::to_string).collect();
    assert_eq!(p2n2.len(), 3);
    assert_eq!(p2n2.len(), common::brute_admissible_full(2, 2).len());
}
