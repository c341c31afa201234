use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::nevanlinna::{profile, FunctionalProfile, NevanlinnaError, ProfileSettings, Truncation};
use crate::symbolic::{
    compose_linear_form, find_witness_family, parse_polynomial, HyperplaneFamily, Polynomial, ProjectiveMap,
    SymbolicError,
};
use crate::theorems::{
    check_apriori_estimate, check_fmt_profile, check_pole_order_bound, check_smt_profile, check_vanishing_estimate,
    defects_profile, fermat_omit_check, fermat_section_check, kappa, ramification_check, smt_preconditions,
    AprioriSettings, TheoremError, TheoremId, Verdict, VerificationReport, DEFAULT_APRIORI_FACTOR, DEFAULT_FMT_BAND,
};
use crate::words::{OperatorSet, Word};

use super::scenario::{CheckSpec, Prepared, RandomSuite};
use super::suites::{random_pole_cases, random_vanishing_instances};
use super::{output, RunError};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub check: String,
    pub report: VerificationReport,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioReport {
    pub scenario: String,
    pub description: String,
    pub p: usize,
    pub n: usize,
    pub map: String,
    pub q: usize,
    pub seed: u64,
    pub radii: Vec<f64>,
    pub quadrature_nodes: usize,
    pub checks: Vec<CheckOutcome>,
    pub passed: bool,
}

#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub report: ScenarioReport,
    pub profile: Option<FunctionalProfile>,
}

impl RunOutcome {
    pub fn json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.report).expect("report serializes");
        s.push('\n');
        s
    }

    /// Writes `profile.csv` (when a profile was computed), `report.txt` and
    /// `report.json`. The profile is revalidated first.
    pub fn write(&self, dir: &Path) -> Result<(), RunError> {
        std::fs::create_dir_all(dir).map_err(|e| RunError::Io(format!("cannot create {}: {e}", dir.display())))?;
        let put = |name: &str, body: &[u8]| {
            std::fs::write(dir.join(name), body).map_err(|e| RunError::Io(format!("cannot write {name}: {e}")))
        };
        if let Some(prof) = &self.profile {
            prof.validate().map_err(|e| RunError::Numeric(e.to_string()))?;
            put("profile.csv", &output::profile_csv(prof).map_err(RunError::Io)?)?;
        }
        put("report.txt", output::render_text(&self.report).as_bytes())?;
        put("report.json", self.json().as_bytes())
    }
}

fn classify(e: TheoremError) -> RunError {
    match e {
        TheoremError::Nevanlinna(
            ref inner @ (NevanlinnaError::QuadratureFailure { .. }
            | NevanlinnaError::DegenerateSlice { .. }
            | NevanlinnaError::ProfileInvariant(_)),
        ) => RunError::Numeric(inner.to_string()),
        other => RunError::Config(other.to_string()),
    }
}

fn profile_truncations(prep: &Prepared) -> Vec<Truncation> {
    let (p, n) = (prep.scenario.p, prep.scenario.n);
    let mut out: Vec<Truncation> = (1..=n as u32).map(Truncation::Level).collect();
    out.push(Truncation::Level(kappa(p, n) as u32));
    out.extend(prep.scenario.truncations.iter().copied());
    for c in &prep.scenario.checks {
        if let CheckSpec::Smt { truncation: Some(t) } | CheckSpec::Defects { truncation: Some(t) } = c {
            out.push(*t);
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Runs every check of a prepared scenario. The profile is computed once
/// and shared; checks run concurrently and are merged in config order.
pub fn execute(prep: &Prepared) -> Result<RunOutcome, RunError> {
    let sc = &prep.scenario;
    let settings = ProfileSettings {
        quadrature: prep.quadrature,
        slicing_lines: sc.slicing_lines,
        slicing_seed: sc.seed,
    };
    let prof = match (&prep.hyperplanes, sc.checks.iter().any(CheckSpec::needs_profile)) {
        (Some(h), true) => Some(
            profile(&prep.map, h, &prep.grid, &profile_truncations(prep), &settings)
                .map_err(|e| classify(e.into()))?,
        ),
        _ => None,
    };
    let checks: Vec<CheckOutcome> = sc
        .checks
        .par_iter()
        .map(|c| run_check(prep, c, prof.as_ref()).map(|report| CheckOutcome { check: c.name().to_string(), report }))
        .collect::<Result<_, _>>()?;
    let passed = checks.iter().all(|c| c.report.passed());
    let report = ScenarioReport {
        scenario: sc.name.clone(),
        description: sc.description.clone(),
        p: sc.p,
        n: sc.n,
        map: prep.map.to_string(),
        q: prep.hyperplanes.as_ref().map_or(0, HyperplaneFamily::q),
        seed: sc.seed,
        radii: prep.grid.radii().to_vec(),
        quadrature_nodes: prep.quadrature.node_count,
        checks,
        passed,
    };
    Ok(RunOutcome { report, profile: prof })
}

fn hyperplanes(prep: &Prepared) -> &HyperplaneFamily {
    prep.hyperplanes.as_ref().expect("validated: check needs hyperplanes")
}

fn operator_set(prep: &Prepared, literals: &Option<Vec<String>>) -> Result<OperatorSet, RunError> {
    match literals {
        Some(s) => {
            let lits: Vec<&str> = s.iter().map(String::as_str).collect();
            OperatorSet::parse(prep.scenario.p, &lits).map_err(|e| RunError::Config(e.to_string()))
        }
        None => find_witness_family(&prep.map).map_err(|e| RunError::Config(e.to_string())),
    }
}

fn run_check(prep: &Prepared, check: &CheckSpec, prof: Option<&FunctionalProfile>) -> Result<VerificationReport, RunError> {
    let sc = &prep.scenario;
    let (p, n) = (sc.p, sc.n);
    let kappa_level = Truncation::Level(kappa(p, n) as u32);
    match check {
        CheckSpec::Fmt { band } => Ok(check_fmt_profile(prof.expect("profile"), band.unwrap_or(DEFAULT_FMT_BAND))),
        CheckSpec::Smt { truncation } => {
            let witness = smt_preconditions(&prep.map, hyperplanes(prep)).map_err(classify)?;
            let mut rep = check_smt_profile(prof.expect("profile"), n, truncation.unwrap_or(kappa_level));
            if let Some(s) = witness {
                rep.details.insert("witness".into(), s.to_string().into());
            }
            Ok(rep)
        }
        CheckSpec::Defects { truncation } => {
            smt_preconditions(&prep.map, hyperplanes(prep)).map_err(classify)?;
            Ok(defects_profile(prof.expect("profile"), n, truncation.unwrap_or(kappa_level)).1)
        }
        CheckSpec::Ramification {} => {
            Ok(ramification_check(&prep.map, hyperplanes(prep), sc.slicing_lines, sc.seed).map_err(classify)?.1)
        }
        CheckSpec::FermatSection {} => fermat_section_check(&prep.map, sc.d.expect("validated")).map_err(classify),
        CheckSpec::FermatOmit {} => fermat_omit_check(&prep.map, sc.d.expect("validated")).map_err(classify),
        CheckSpec::PoleOrder { cases, words, samples, random } => pole_order_suite(prep, cases, words, *samples, random),
        CheckSpec::Vanishing { operator_set: s, random } => vanishing_suite(prep, s, random),
        CheckSpec::Apriori { operator_set: s, samples, factor } => {
            let set = operator_set(prep, s)?;
            let settings = AprioriSettings {
                samples: *samples,
                seed: sc.seed,
                factor: factor.unwrap_or(DEFAULT_APRIORI_FACTOR),
                grid: prep.grid.clone(),
            };
            check_apriori_estimate(&prep.map, hyperplanes(prep), &set, &settings).map_err(classify)
        }
        CheckSpec::Witness {} => Ok(witness_report(&prep.map)),
        CheckSpec::Profile {} => {
            let prof = prof.expect("profile");
            let slack = prof.default_slack();
            let v = prof.violations(slack);
            let mut rep = VerificationReport::new(TheoremId::Profile);
            rep.radii = prof.grid.radii().to_vec();
            rep.details.insert("truncations".into(), serde_json::to_value(&prof.truncations).unwrap());
            rep.details.insert("slack".into(), slack.into());
            rep.details.insert("violations".into(), serde_json::to_value(&v).unwrap());
            rep.verdict = Verdict::from_bool(v.is_empty());
            Ok(rep)
        }
    }
}

fn witness_report(map: &ProjectiveMap) -> VerificationReport {
    let mut rep = VerificationReport::new(TheoremId::Witness);
    let (p, n) = (map.p(), map.n());
    match find_witness_family(map) {
        Ok(set) => {
            let singles = (1..=p as u16).all(|l| set.contains(&Word::single(l)));
            let bound = kappa(p, n);
            let ok = set.is_full() && set.is_admissible() && singles && set.max_order() <= bound;
            rep.details.insert("operator_set".into(), set.to_string().into());
            rep.details.insert("max_order".into(), set.max_order().into());
            rep.details.insert("order_bound".into(), bound.into());
            rep.details.insert("contains_single_letters".into(), singles.into());
            rep.verdict = Verdict::from_bool(ok);
        }
        Err(e) => {
            rep.notes.push(e.to_string());
        }
    }
    rep
}

fn pole_order_suite(
    prep: &Prepared,
    cases: &[super::scenario::PoleCase],
    words: &[String],
    samples: usize,
    random: &Option<RandomSuite>,
) -> Result<VerificationReport, RunError> {
    let mut work: Vec<(Polynomial, Word)> = Vec::new();
    for c in cases {
        let g = parse_polynomial(&c.g, 1).map_err(|e| RunError::Config(e.to_string()))?;
        work.push((g, c.word.parse().map_err(|e: crate::words::WordError| RunError::Config(e.to_string()))?));
    }
    if cases.is_empty() && random.is_none() {
        let ws: Vec<Word> = if words.is_empty() {
            (1..=3).map(|k| Word::new(vec![1; k])).collect()
        } else {
            words.iter().map(|w| w.parse().expect("validated")).collect()
        };
        let gs: Vec<Polynomial> = match &prep.hyperplanes {
            Some(h) => (0..h.q())
                .map(|i| compose_linear_form(&prep.map, h.row(i)))
                .collect::<Result<_, SymbolicError>>()
                .map_err(|e| RunError::Config(e.to_string()))?,
            None => prep.map.components().to_vec(),
        };
        for g in gs.iter().filter(|g| !g.is_constant()) {
            for w in &ws {
                work.push((g.clone(), w.clone()));
            }
        }
    }
    if let Some(r) = random {
        work.extend(random_pole_cases(r.count, r.max_degree, prep.scenario.seed));
    }
    let reports: Vec<VerificationReport> = work
        .par_iter()
        .map(|(g, w)| check_pole_order_bound(g, w, samples))
        .collect::<Result<_, _>>()
        .map_err(classify)?;
    Ok(aggregate(TheoremId::PoleOrder, &work.iter().map(|(g, w)| format!("{g} | {w}")).collect::<Vec<_>>(), reports))
}

fn vanishing_suite(
    prep: &Prepared,
    set: &Option<Vec<String>>,
    random: &Option<RandomSuite>,
) -> Result<VerificationReport, RunError> {
    let mut work: Vec<(ProjectiveMap, HyperplaneFamily, OperatorSet)> = Vec::new();
    if let Some(h) = &prep.hyperplanes {
        work.push((prep.map.clone(), h.clone(), operator_set(prep, set)?));
    }
    if let Some(r) = random {
        work.extend(random_vanishing_instances(r.count, r.max_degree, prep.scenario.seed));
    }
    let reports: Vec<VerificationReport> = work
        .par_iter()
        .map(|(f, h, s)| check_vanishing_estimate(f, h, s))
        .collect::<Result<_, _>>()
        .map_err(classify)?;
    let labels: Vec<String> = work.iter().map(|(f, _, s)| format!("{f} | {s}")).collect();
    Ok(aggregate(TheoremId::Vanishing, &labels, reports))
}

/// One report for a batch of exact cases: the single case's report when
/// there is one, otherwise counts plus the failing cases.
fn aggregate(id: TheoremId, labels: &[String], reports: Vec<VerificationReport>) -> VerificationReport {
    if reports.len() == 1 {
        return reports.into_iter().next().unwrap();
    }
    let mut rep = VerificationReport::new(id);
    let failures: Vec<serde_json::Value> = labels
        .iter()
        .zip(&reports)
        .filter(|(_, r)| !r.passed())
        .map(|(l, r)| serde_json::json!({ "case": l, "details": r.details }))
        .collect();
    let vacuous = reports.iter().filter(|r| !r.notes.is_empty()).count();
    rep.details.insert("cases".into(), reports.len().into());
    rep.details.insert("violations".into(), failures.len().into());
    rep.details.insert("cases_with_notes".into(), vacuous.into());
    rep.details.insert("failures".into(), failures.clone().into());
    rep.verdict = Verdict::from_bool(failures.is_empty() && !reports.is_empty());
    rep
}
