//! Runs a bundled scenario (or a JSON file) in-process and prints the text
//! report, like the `holocurve` binary without writing files.
//!
//! `cargo run --release --example run_scenario -- slicing_p2_n2`

use std::path::PathBuf;

use holocurve::cli::{execute, list_examples, load_scenario, render_text, Overrides};

fn main() {
    let Some(name) = std::env::args().nth(1) else {
        print!("{}", list_examples(false));
        return;
    };
    let scenario = load_scenario(&PathBuf::from(&name)).unwrap_or_else(|e| panic!("{e}"));
    let prepared = scenario.prepare(&Overrides::default()).unwrap_or_else(|e| panic!("{e}"));
    let outcome = execute(&prepared).unwrap_or_else(|e| panic!("{e}"));
    print!("{}", render_text(&outcome.report));
}
