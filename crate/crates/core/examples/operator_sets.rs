//! Admissible full operator sets and witness candidates.
//!
//! `cargo run --example operator_sets -- 2 3`

use holocurve::theorems::kappa;
use holocurve::words::{enumerate_admissible_full_sets, witness_candidates, OperatorSet};

fn main() {
    let args: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let (p, n) = (args.first().copied().unwrap_or(2), args.get(1).copied().unwrap_or(3));

    let sets = enumerate_admissible_full_sets(p, n, None).expect("valid p, n");
    println!("p = {p}, n = {n}: {} admissible full sets, kappa = {}", sets.len(), kappa(p, n));
    for s in sets.iter().take(12) {
        println!("  {s}  (max order {})", s.max_order());
    }
    if sets.len() > 12 {
        println!("  ...");
    }

    let wit = witness_candidates(p, n).expect("valid p, n");
    println!("{} candidates contain every single letter and stay within order kappa", wit.len());

    let custom = OperatorSet::parse(2, &["", "1", "2", "11"]).expect("words over two letters");
    println!("{custom}: full = {}, admissible = {}", custom.is_full(), custom.is_admissible());
}
