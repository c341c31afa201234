//! Order, proximity and counting functions of a rational normal curve, and
//! the check that `m + N(∞) − T` stays bounded.

use holocurve::nevanlinna::{profile, ProfileSettings, RadiusGrid, Truncation};
use holocurve::symbolic::{HyperplaneFamily, ProjectiveMap};
use holocurve::theorems::check_fmt_profile;

fn main() {
    let map = ProjectiveMap::parse(1, &["1", "z", "z^2"]).unwrap();
    let h = HyperplaneFamily::from_integers(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 1]]).unwrap();
    let grid = RadiusGrid::geometric(10.0, 1e5, 2).unwrap();
    let prof = profile(&map, &h, &grid, &[Truncation::Level(1)], &ProfileSettings::default()).unwrap();

    println!("{:>10} {:>10} {:>10} {:>10} {:>10}", "r", "T", "m_H3", "N_H3", "N1_H3");
    for (k, r) in grid.radii().iter().enumerate() {
        let h3 = &prof.hyperplanes[3];
        println!(
            "{r:>10.1} {:>10.4} {:>10.4} {:>10.4} {:>10.4}",
            prof.order[k],
            h3.proximity[k],
            prof.counting(3, Truncation::Infinite).unwrap()[k],
            prof.counting(3, Truncation::Level(1)).unwrap()[k],
        );
    }

    let rep = check_fmt_profile(&prof, 0.01);
    println!("\nfmt [{}] residual spreads {}", rep.verdict, rep.details["spreads"]);
}
