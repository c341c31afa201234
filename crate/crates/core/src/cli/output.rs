use std::fmt::Write as _;

use crate::nevanlinna::{CountingSeries, FunctionalProfile, HyperplaneProfile};

use super::runner::ScenarioReport;

fn num(x: f64) -> String {
    format!("{:.16e}", x + 0.0)
}

fn series(h: &HyperplaneProfile) -> impl Iterator<Item = (&'static str, &CountingSeries)> {
    h.counting.iter().map(|s| ("N", s)).chain(h.sliced_infinite.iter().map(|s| ("Nsliced", s)))
}

/// `r, T`, then per hyperplane `m_Hi`, `N[m]_Hi` for every truncation and,
/// for sampled series, their standard errors. Values carry 17 significant
/// digits.
pub fn profile_csv(prof: &FunctionalProfile) -> Result<Vec<u8>, String> {
    let mut header = vec!["r".to_string(), "T".to_string()];
    for h in &prof.hyperplanes {
        let i = h.index;
        header.push(format!("m_H{i}"));
        for (name, s) in series(h) {
            header.push(format!("{name}[{}]_H{i}", s.truncation));
            if s.stderr.is_some() {
                header.push(format!("se_{name}[{}]_H{i}", s.truncation));
            }
        }
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(&header).map_err(|e| e.to_string())?;
    for (k, r) in prof.grid.radii().iter().enumerate() {
        let mut row = vec![num(*r), num(prof.order[k])];
        for h in &prof.hyperplanes {
            row.push(num(h.proximity[k]));
            for (_, s) in series(h) {
                row.push(num(s.values[k]));
                if let Some(se) = &s.stderr {
                    row.push(num(se[k]));
                }
            }
        }
        w.write_record(&row).map_err(|e| e.to_string())?;
    }
    w.into_inner().map_err(|e| e.to_string())
}

fn short(v: &serde_json::Value) -> String {
    match v {
        serde_json::Value::Number(n) => match n.as_f64() {
            Some(x) if n.is_f64() => format!("{x:.6}"),
            _ => n.to_string(),
        },
        serde_json::Value::String(s) => s.clone(),
        serde_json::Value::Array(a) if a.iter().all(|x| !x.is_array() && !x.is_object()) => {
            format!("[{}]", a.iter().map(short).collect::<Vec<_>>().join(", "))
        }
        other => {
            let s = other.to_string();
            if s.len() > 120 {
                format!("{}…", &s[..s.char_indices().nth(117).map_or(s.len(), |(i, _)| i)])
            } else {
                s
            }
        }
    }
}

/// Human-readable summary: verdicts, margins at the ends of the grid, the
/// fitted error term and scalar details of every check.
pub fn render_text(rep: &ScenarioReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "scenario   {}", rep.scenario);
    if !rep.description.is_empty() {
        let _ = writeln!(s, "           {}", rep.description);
    }
    let _ = writeln!(s, "map        {}  (p = {}, n = {})", rep.map, rep.p, rep.n);
    let _ = writeln!(s, "hyperplanes {}", rep.q);
    if let (Some(a), Some(b)) = (rep.radii.first(), rep.radii.last()) {
        let _ = writeln!(s, "grid       {} radii in [{a}, {b}], {} quadrature nodes, seed {}", rep.radii.len(), rep.quadrature_nodes, rep.seed);
    }
    for c in &rep.checks {
        let r = &c.report;
        let _ = writeln!(s, "\n[{}] {}", r.verdict, c.check);
        if let (Some(first), Some(last)) = (r.margins.first(), r.margins.last()) {
            let _ = writeln!(s, "  margin     {first:.6} .. {last:.6}");
        }
        if let Some(fit) = &r.fit {
            let _ = writeln!(s, "  S_f fit    c1 = {:.6}, c2 = {:.6}, residual = {:.3e}", fit.c1, fit.c2, fit.residual);
        }
        if !r.violation_radii.is_empty() {
            let _ = writeln!(s, "  violations at r = {}", short(&serde_json::json!(r.violation_radii)));
        }
        for (k, v) in &r.details {
            if k.starts_with("residual_H") || k == "points" || k == "zeros" {
                continue;
            }
            let _ = writeln!(s, "  {k:<10} {}", short(v));
        }
        for n in &r.notes {
            let _ = writeln!(s, "  note: {n}");
        }
    }
    let _ = writeln!(s, "\noverall    {}", if rep.passed { "PASS" } else { "FAIL" });
    s
}
