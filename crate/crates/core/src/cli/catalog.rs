use serde::Serialize;

use super::scenario::Scenario;

const BUNDLED: &[(&str, &str)] = &[
    ("cartan_p1_n1", include_str!("../../scenarios/cartan_p1_n1.json")),
    ("cartan_p1_n2", include_str!("../../scenarios/cartan_p1_n2.json")),
    ("cartan_p1_n3", include_str!("../../scenarios/cartan_p1_n3.json")),
    ("slicing_p2_n2", include_str!("../../scenarios/slicing_p2_n2.json")),
    ("slicing_p2_n3", include_str!("../../scenarios/slicing_p2_n3.json")),
    ("fermat_section_line", include_str!("../../scenarios/fermat_section_line.json")),
    ("fermat_section_plane", include_str!("../../scenarios/fermat_section_plane.json")),
    ("fermat_omit_cubic", include_str!("../../scenarios/fermat_omit_cubic.json")),
    ("pole_order_suite", include_str!("../../scenarios/pole_order_suite.json")),
    ("vanishing_suite", include_str!("../../scenarios/vanishing_suite.json")),
    ("witness_p2_n4", include_str!("../../scenarios/witness_p2_n4.json")),
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CatalogEntry {
    pub name: String,
    pub family: String,
    pub description: String,
    pub p: usize,
    pub n: usize,
    pub q: usize,
    pub checks: Vec<String>,
}

fn family(name: &str) -> &'static str {
    match name.split('_').next() {
        Some("cartan") => "cartan p=1",
        Some("slicing") => "slicing p=2",
        Some("fermat") => "fermat",
        Some("witness") => "witness",
        _ => "exact p=1",
    }
}

/// Every bundled scenario, parsed.
pub fn bundled() -> Vec<Scenario> {
    BUNDLED
        .iter()
        .map(|(name, text)| Scenario::from_json(text).unwrap_or_else(|e| panic!("bundled scenario {name}: {e}")))
        .collect()
}

pub fn find_bundled(name: &str) -> Option<Scenario> {
    let name = name.strip_suffix(".json").unwrap_or(name);
    BUNDLED.iter().find(|(n, _)| *n == name).map(|(_, text)| Scenario::from_json(text).expect("bundled scenario parses"))
}

fn entries() -> Vec<CatalogEntry> {
    bundled()
        .into_iter()
        .map(|sc| {
            let mut checks: Vec<String> = sc.checks.iter().map(|c| c.name().to_string()).collect();
            checks.dedup();
            CatalogEntry {
                family: family(&sc.name).to_string(),
                q: sc.hyperplanes.len(),
                p: sc.p,
                n: sc.n,
                description: sc.description,
                name: sc.name,
                checks,
            }
        })
        .collect()
}

/// The catalog as a table, or as a JSON array when `json` is set.
pub fn list_examples(json: bool) -> String {
    let entries = entries();
    if json {
        let mut s = serde_json::to_string_pretty(&entries).expect("catalog serializes");
        s.push('\n');
        return s;
    }
    let mut out = String::new();
    for e in entries {
        out.push_str(&format!(
            "{:<22} {:<12} p={} n={} q={:<2} {}\n{:<22} {}\n",
            e.name,
            e.family,
            e.p,
            e.n,
            e.q,
            e.checks.join(","),
            "",
            e.description
        ));
    }
    out
}
