//! Exact generalized Wronskians and the independence test.

use holocurve::symbolic::{
    find_witness_family, generalized_wronskian, is_linearly_independent, linear_relations, ProjectiveMap,
};
use holocurve::words::OperatorSet;

fn main() {
    let map = ProjectiveMap::parse(2, &["1", "z1", "z2", "z1^2", "z1*z2"]).expect("valid map");
    println!("f = {map}");

    let set = find_witness_family(&map).expect("nondegenerate map");
    let w = generalized_wronskian(&set, map.components()).expect("matching arity");
    println!("witness set {set}");
    println!("W = {w}");

    let other = OperatorSet::parse(2, &["", "1", "2", "11", "22"]).unwrap();
    let w2 = generalized_wronskian(&other, map.components()).unwrap();
    println!("{other} gives W = {w2}");

    let dependent = ProjectiveMap::parse(1, &["1 + z", "z - z^2", "1 + 2*z - z^2"]).unwrap();
    let ind = is_linearly_independent(dependent.components()).unwrap();
    println!("\n{dependent}: independent = {}", ind.independent);
    for rel in linear_relations(dependent.components()) {
        let coeffs: Vec<String> = rel.iter().map(ToString::to_string).collect();
        println!("  relation [{}]", coeffs.join(", "));
    }
}
