//! Truncated second main theorem, defects and ramification for a curve in
//! `P^3` with six hyperplanes.

use holocurve::nevanlinna::{ProfileSettings, RadiusGrid, Truncation};
use holocurve::symbolic::{HyperplaneFamily, ProjectiveMap};
use holocurve::theorems::{check_smt, defects, kappa, ramification_check};

fn main() {
    let map = ProjectiveMap::parse(1, &["1", "z", "z^2", "z^3"]).unwrap();
    let h = HyperplaneFamily::from_integers(&[
        &[1, 0, 0, 0],
        &[0, 1, 0, 0],
        &[0, 0, 1, 0],
        &[0, 0, 0, 1],
        &[1, 1, 1, 1],
        &[1, 2, 4, 8],
    ])
    .unwrap();
    let grid = RadiusGrid::geometric(10.0, 1e4, 4).unwrap();
    let settings = ProfileSettings::default();
    let k = kappa(map.p(), map.n());

    for m in [Some(Truncation::Level(k as u32)), Some(Truncation::Infinite)] {
        let rep = check_smt(&map, &h, &grid, &settings, m).unwrap();
        let fit = rep.fit.as_ref().unwrap();
        println!(
            "smt at {} [{}] margins {:.4} .. {:.4}, S_f ~ {:.3} log T + {:.3} log r",
            m.unwrap(),
            rep.verdict,
            rep.margins[0],
            rep.margins.last().unwrap(),
            fit.c1,
            fit.c2
        );
    }

    let (delta, rep) = defects(&map, &h, &grid, &settings, Truncation::Level(k as u32)).unwrap();
    let shown: Vec<String> = delta.iter().map(|d| format!("{d:.3}")).collect();
    println!("defects [{}] {}", rep.verdict, shown.join(" "));

    let (ram, rep) = ramification_check(&map, &h, 0, 0).unwrap();
    println!("ramification [{}] mu = {:?}, sum = {:.3}", rep.verdict, ram.mu, ram.defect_sum(k));
}
