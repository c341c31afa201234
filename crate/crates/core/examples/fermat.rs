//! Curves on Fermat hypersurfaces: the pushed map, the degeneracy check for
//! sections, and the omission check.

use holocurve::symbolic::{fermat_membership, fermat_push, ProjectiveMap};
use holocurve::theorems::{fermat_omit_check, fermat_section_check};

fn main() {
    // lies on w0^2 + w1^2 + w2^2 + w3^2 = 0 inside w1 = i*w0
    let line = ProjectiveMap::parse(1, &["1", "i", "z", "i*z"]).unwrap();
    println!("f = {line}");
    println!("sum of squares: {}", fermat_membership(&line, 2));
    println!("pushed: {}", fermat_push(&line, 2).unwrap().map);
    let rep = fermat_section_check(&line, 2).unwrap();
    println!("section [{}] degenerate = {}", rep.verdict, rep.details["degenerate"]);

    let omit = ProjectiveMap::parse(1, &["1", "i*z^3", "z^3"]).unwrap();
    let rep = fermat_omit_check(&omit, 2).unwrap();
    println!("\nf = {omit}");
    for (k, v) in &rep.details {
        println!("  {k}: {v}");
    }
    println!("omit [{}]", rep.verdict);
}
