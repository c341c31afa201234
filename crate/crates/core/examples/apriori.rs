//! The pointwise ratio `‖f‖^{q−n−1} / (φψ)` and its sampled bound.

use num_complex::Complex64;

use holocurve::nevanlinna::RadiusGrid;
use holocurve::symbolic::{find_witness_family, HyperplaneFamily, ProjectiveMap};
use holocurve::theorems::{apriori_ratio, check_apriori_estimate, AprioriSettings};

fn main() {
    let map = ProjectiveMap::parse(2, &["1", "z1", "z2"]).unwrap();
    let h = HyperplaneFamily::from_integers(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 1]]).unwrap();
    let set = find_witness_family(&map).unwrap();

    for z in [[0.3, -1.2], [5.0, 2.0], [40.0, -70.0], [1e3, 1e3]] {
        let pt = [Complex64::new(z[0], 0.5), Complex64::new(z[1], -0.25)];
        match apriori_ratio(&map, &h, &set, &pt).unwrap() {
            Some(v) => println!("ratio at ({}, {}) = {v:.6}", pt[0], pt[1]),
            None => println!("ratio at ({}, {}) undefined", pt[0], pt[1]),
        }
    }

    let settings = AprioriSettings { samples: 512, seed: 3, grid: RadiusGrid::geometric(2.0, 2e4, 2).unwrap(), ..Default::default() };
    let rep = check_apriori_estimate(&map, &h, &set, &settings).unwrap();
    println!("\napriori [{}]", rep.verdict);
    for (k, v) in &rep.details {
        println!("  {k}: {v}");
    }
}
