//! Counting functions of a divisor in `C^2`: Jensen's formula on the sphere
//! against complex lines through the origin.

use holocurve::nevanlinna::{counting_jensen_replicated, counting_sliced, QuadratureSpec, Scheme, Truncation};
use holocurve::symbolic::parse_polynomial;

fn main() {
    // a double conic plus a line
    let g = parse_polynomial("(z1^2 + z2^2 - 4)^2 * (z1 - 3*z2 + 1)", 2).unwrap();
    let quad = QuadratureSpec::new(Scheme::ProductRule, 4096, 7).unwrap();
    println!("g = {g}");
    println!("{:>8} {:>18} {:>18} {:>18}", "r", "Jensen N", "sliced N", "sliced N[1]");
    for r in [3.0, 10.0, 100.0, 1000.0] {
        let j = counting_jensen_replicated(&g, r, &quad, 8).unwrap();
        let s = counting_sliced(&g, r, Truncation::Infinite, 256, 7).unwrap();
        let s1 = counting_sliced(&g, r, Truncation::Level(1), 256, 7).unwrap();
        println!(
            "{r:>8} {:>10.4} ± {:<6.4} {:>10.4} ± {:<6.4} {:>10.4} ± {:<6.4}",
            j.value, j.stderr, s.value, s.stderr, s1.value, s1.stderr
        );
    }
}
