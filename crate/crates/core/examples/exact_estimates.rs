//! Exact `p = 1` estimates: the pole order of `∂^w g / g` and the vanishing
//! order of a Wronskian at points where hyperplanes meet the curve.

use holocurve::cli::{random_pole_cases, random_vanishing_instances};
use holocurve::symbolic::{parse_polynomial, HyperplaneFamily, ProjectiveMap};
use holocurve::theorems::{check_pole_order_bound, check_vanishing_estimate};
use holocurve::words::{OperatorSet, Word};

fn main() {
    let g = parse_polynomial("(z - 1)^3 * (z + i)", 1).unwrap();
    let rep = check_pole_order_bound(&g, &Word::new(vec![1, 1]), 4).unwrap();
    println!("g = {g}, w = 11 [{}]", rep.verdict);
    for (k, v) in &rep.details {
        println!("  {k}: {v}");
    }

    let cases = random_pole_cases(200, 8, 1);
    let failures = cases.iter().filter(|(g, w)| !check_pole_order_bound(g, w, 4).unwrap().passed()).count();
    println!("{} random pole cases, {failures} failures", cases.len());

    let map = ProjectiveMap::parse(1, &["1", "z^2", "z^5"]).unwrap();
    let h = HyperplaneFamily::from_integers(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 1]]).unwrap();
    let set = OperatorSet::parse(1, &["", "1", "11"]).unwrap();
    let rep = check_vanishing_estimate(&map, &h, &set).unwrap();
    println!("\nf = {map} [{}]", rep.verdict);

    let inst = random_vanishing_instances(50, 6, 1);
    let failures = inst.iter().filter(|(f, h, s)| !check_vanishing_estimate(f, h, s).unwrap().passed()).count();
    println!("{} random curves, {failures} failures", inst.len());
}
