//! JSON scenario schema.
//!
//! ```json
//! {
//!   "name": "cartan_p1_n1",
//!   "description": "...",
//!   "p": 1, "n": 1,
//!   "components": ["1", "z"],
//!   "hyperplanes": [[1, 0], [0, 1], [1, 1]],
//!   "grid": {"min": 10, "max": 10000, "per_decade": 4},
//!   "quadrature": {"scheme": "product-rule", "nodes": 1024},
//!   "checks": [{"check": "fmt", "band": 0.05}, {"check": "smt"}],
//!   "seed": 1
//! }
//! ```
//!
//! Components are polynomial literals or term lists
//! `[{"coeff": c, "exp": [e_1, …, e_p]}]`. Scalars are JSON numbers (taken
//! exactly as binary floats), strings such as `"3/4"` or `"1 - 2*i"`, or
//! `[re, im]` pairs of either.

use serde::{Deserialize, Serialize};

use crate::nevanlinna::{QuadratureSpec, RadiusGrid, Scheme, Truncation};
use crate::symbolic::{parse_polynomial, parse_scalar, GaussianRational, HyperplaneFamily, Polynomial, ProjectiveMap};
use crate::words::{OperatorSet, Word};

use super::ConfigError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub name: String,
    #[serde(default)]
    pub description: String,
    pub p: usize,
    pub n: usize,
    pub components: Vec<ComponentSpec>,
    #[serde(default)]
    pub hyperplanes: Vec<Vec<ScalarSpec>>,
    #[serde(default = "default_true")]
    pub normalized: bool,
    #[serde(default)]
    pub d: Option<u32>,
    #[serde(default)]
    pub grid: GridSpec,
    #[serde(default)]
    pub quadrature: QuadratureConfig,
    #[serde(default = "default_lines")]
    pub slicing_lines: usize,
    /// Extra truncation levels for the profile table.
    #[serde(default)]
    pub truncations: Vec<Truncation>,
    pub checks: Vec<CheckSpec>,
    #[serde(default)]
    pub seed: u64,
}

fn default_true() -> bool {
    true
}

fn default_lines() -> usize {
    256
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScalarAtom {
    Number(f64),
    Text(String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScalarSpec {
    Atom(ScalarAtom),
    Pair([ScalarAtom; 2]),
}

impl ScalarAtom {
    fn to_exact(&self) -> Result<GaussianRational, ConfigError> {
        match self {
            ScalarAtom::Number(x) => GaussianRational::from_f64(*x, 0.0)
                .ok_or_else(|| ConfigError::new(format!("non-finite number {x}"))),
            ScalarAtom::Text(s) => parse_scalar(s).map_err(|e| ConfigError::new(format!("bad scalar: {e}"))),
        }
    }
}

impl ScalarSpec {
    pub fn to_exact(&self) -> Result<GaussianRational, ConfigError> {
        match self {
            ScalarSpec::Atom(a) => a.to_exact(),
            ScalarSpec::Pair([re, im]) => Ok(&re.to_exact()? + &(&im.to_exact()? * &GaussianRational::i())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermSpec {
    pub coeff: ScalarSpec,
    pub exp: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ComponentSpec {
    Literal(String),
    Terms(Vec<TermSpec>),
}

impl ComponentSpec {
    pub fn to_polynomial(&self, p: usize) -> Result<Polynomial, ConfigError> {
        match self {
            ComponentSpec::Literal(s) => {
                parse_polynomial(s, p).map_err(|e| ConfigError::new(format!("bad component: {e}")))
            }
            ComponentSpec::Terms(terms) => {
                let mut out = Vec::with_capacity(terms.len());
                for t in terms {
                    if t.exp.len() != p {
                        return Err(ConfigError::new(format!(
                            "term exponent {:?} has length {}, expected p = {p}",
                            t.exp,
                            t.exp.len()
                        )));
                    }
                    out.push((t.exp.clone(), t.coeff.to_exact()?));
                }
                Ok(Polynomial::from_terms(p, out))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged, deny_unknown_fields)]
pub enum GridSpec {
    Radii { radii: Vec<f64> },
    Geometric { min: f64, max: f64, per_decade: u32 },
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec::Geometric { min: 10.0, max: 1e4, per_decade: 4 }
    }
}

impl GridSpec {
    pub fn build(&self, grid_max: Option<f64>) -> Result<RadiusGrid, ConfigError> {
        let grid = match (self, grid_max) {
            (GridSpec::Geometric { min, per_decade, .. }, Some(max)) => RadiusGrid::geometric(*min, max, *per_decade),
            (GridSpec::Geometric { min, max, per_decade }, None) => RadiusGrid::geometric(*min, *max, *per_decade),
            (GridSpec::Radii { radii }, None) => RadiusGrid::new(radii.clone()),
            (GridSpec::Radii { radii }, Some(max)) => {
                let mut r: Vec<f64> = radii.iter().copied().filter(|&x| x <= max).collect();
                let mut next = r.last().map_or(10.0, |x| x * 10f64.powf(0.25));
                while next <= max * (1.0 + 1e-12) {
                    r.push(next);
                    next *= 10f64.powf(0.25);
                }
                RadiusGrid::new(r)
            }
        };
        grid.map_err(|e| ConfigError::new(e.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuadratureConfig {
    #[serde(default = "default_scheme")]
    pub scheme: Scheme,
    #[serde(default = "default_nodes")]
    pub nodes: usize,
    /// Defaults to the scenario seed.
    #[serde(default)]
    pub seed: Option<u64>,
}

fn default_scheme() -> Scheme {
    Scheme::ProductRule
}

fn default_nodes() -> usize {
    QuadratureSpec::default().node_count
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig { scheme: default_scheme(), nodes: default_nodes(), seed: None }
    }
}

/// Randomized exact suite size and shape.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RandomSuite {
    pub count: usize,
    #[serde(default = "default_max_degree")]
    pub max_degree: u32,
}

fn default_max_degree() -> u32 {
    6
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PoleCase {
    pub g: String,
    pub word: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "check", rename_all = "kebab-case", deny_unknown_fields)]
pub enum CheckSpec {
    Fmt {
        #[serde(default)]
        band: Option<f64>,
    },
    Smt {
        #[serde(default)]
        truncation: Option<Truncation>,
    },
    Defects {
        #[serde(default)]
        truncation: Option<Truncation>,
    },
    Ramification {},
    FermatSection {},
    FermatOmit {},
    PoleOrder {
        /// Explicit `(g, word)` pairs; without them every hyperplane
        /// composition is paired with each of `words`.
        #[serde(default)]
        cases: Vec<PoleCase>,
        #[serde(default)]
        words: Vec<String>,
        #[serde(default = "default_samples")]
        samples: usize,
        #[serde(default)]
        random: Option<RandomSuite>,
    },
    Vanishing {
        #[serde(default)]
        operator_set: Option<Vec<String>>,
        #[serde(default)]
        random: Option<RandomSuite>,
    },
    Apriori {
        #[serde(default)]
        operator_set: Option<Vec<String>>,
        #[serde(default = "default_apriori_samples")]
        samples: usize,
        #[serde(default)]
        factor: Option<f64>,
    },
    Witness {},
    Profile {},
}

fn default_samples() -> usize {
    4
}

fn default_apriori_samples() -> usize {
    256
}

impl CheckSpec {
    pub fn name(&self) -> &'static str {
        match self {
            CheckSpec::Fmt { .. } => "fmt",
            CheckSpec::Smt { .. } => "smt",
            CheckSpec::Defects { .. } => "defects",
            CheckSpec::Ramification {} => "ramification",
            CheckSpec::FermatSection {} => "fermat-section",
            CheckSpec::FermatOmit {} => "fermat-omit",
            CheckSpec::PoleOrder { .. } => "pole-order",
            CheckSpec::Vanishing { .. } => "vanishing",
            CheckSpec::Apriori { .. } => "apriori",
            CheckSpec::Witness {} => "witness",
            CheckSpec::Profile {} => "profile",
        }
    }

    pub fn needs_profile(&self) -> bool {
        matches!(self, CheckSpec::Fmt { .. } | CheckSpec::Smt { .. } | CheckSpec::Defects { .. } | CheckSpec::Profile {})
    }

    fn needs_hyperplanes(&self) -> bool {
        matches!(
            self,
            CheckSpec::Fmt { .. }
                | CheckSpec::Smt { .. }
                | CheckSpec::Defects { .. }
                | CheckSpec::Ramification {}
                | CheckSpec::Apriori { .. }
                | CheckSpec::Profile {}
        ) || matches!(self, CheckSpec::Vanishing { random: None, .. })
    }

    fn needs_q_at_least_n_plus_2(&self) -> bool {
        matches!(self, CheckSpec::Smt { .. } | CheckSpec::Defects { .. } | CheckSpec::Apriori { .. })
    }
}

/// A validated scenario with its exact objects built.
#[derive(Debug, Clone)]
pub struct Prepared {
    pub scenario: Scenario,
    pub map: ProjectiveMap,
    pub hyperplanes: Option<HyperplaneFamily>,
    pub grid: RadiusGrid,
    pub quadrature: QuadratureSpec,
}

impl Scenario {
    pub fn from_json(text: &str) -> Result<Self, ConfigError> {
        serde_json::from_str(text).map_err(|e| ConfigError::new(format!("invalid scenario JSON: {e}")))
    }

    /// Validates and builds the exact map, hyperplanes, grid and quadrature.
    pub fn prepare(&self, overrides: &super::Overrides) -> Result<Prepared, ConfigError> {
        let mut sc = self.clone();
        if let Some(seed) = overrides.seed {
            sc.seed = seed;
            sc.quadrature.seed = None;
        }
        if let Some(nodes) = overrides.quad_nodes {
            sc.quadrature.nodes = nodes;
        }
        if sc.p == 0 || sc.n == 0 {
            return Err(ConfigError::new("p and n must be at least 1"));
        }
        if sc.components.len() != sc.n + 1 {
            return Err(ConfigError::new(format!(
                "expected n + 1 = {} components, got {}",
                sc.n + 1,
                sc.components.len()
            )));
        }
        if sc.checks.is_empty() {
            return Err(ConfigError::new("scenario lists no checks"));
        }
        let comps = sc.components.iter().map(|c| c.to_polynomial(sc.p)).collect::<Result<Vec<_>, _>>()?;
        let map = ProjectiveMap::new(sc.p, comps).map_err(|e| ConfigError::new(format!("invalid map: {e}")))?;

        let hyperplanes = if sc.hyperplanes.is_empty() {
            None
        } else {
            let rows = sc
                .hyperplanes
                .iter()
                .map(|r| {
                    if r.len() != sc.n + 1 {
                        return Err(ConfigError::new(format!(
                            "hyperplane row has width {}, expected n + 1 = {}",
                            r.len(),
                            sc.n + 1
                        )));
                    }
                    r.iter().map(ScalarSpec::to_exact).collect::<Result<Vec<_>, _>>()
                })
                .collect::<Result<Vec<_>, _>>()?;
            let fam = HyperplaneFamily::new(rows).map_err(|e| ConfigError::new(format!("invalid hyperplanes: {e}")))?;
            Some(fam.with_normalization(sc.normalized))
        };
        let q = hyperplanes.as_ref().map_or(0, HyperplaneFamily::q);
        for check in &sc.checks {
            if check.needs_hyperplanes() && hyperplanes.is_none() {
                return Err(ConfigError::new(format!("check '{}' needs hyperplanes", check.name())));
            }
            if check.needs_q_at_least_n_plus_2() && q < sc.n + 2 {
                return Err(ConfigError::new(format!(
                    "check '{}' needs q >= n + 2 hyperplanes (q = {q}, n = {})",
                    check.name(),
                    sc.n
                )));
            }
            if matches!(check, CheckSpec::FermatSection {} | CheckSpec::FermatOmit {}) && sc.d.is_none() {
                return Err(ConfigError::new(format!("check '{}' needs the degree d", check.name())));
            }
            match check {
                CheckSpec::Vanishing { operator_set: Some(s), .. } | CheckSpec::Apriori { operator_set: Some(s), .. } => {
                    let lits: Vec<&str> = s.iter().map(String::as_str).collect();
                    OperatorSet::parse(sc.p, &lits).map_err(|e| ConfigError::new(format!("bad operator set: {e}")))?;
                }
                CheckSpec::PoleOrder { cases, words, .. } => {
                    for w in words.iter().chain(cases.iter().map(|c| &c.word)) {
                        w.parse::<Word>().map_err(|e| ConfigError::new(format!("bad word '{w}': {e}")))?;
                    }
                    for c in cases {
                        parse_polynomial(&c.g, 1).map_err(|e| ConfigError::new(format!("bad polynomial: {e}")))?;
                    }
                }
                _ => {}
            }
        }
        let grid = sc.grid.build(overrides.grid_max)?;
        let quadrature = QuadratureSpec::new(sc.quadrature.scheme, sc.quadrature.nodes, sc.quadrature.seed.unwrap_or(sc.seed))
            .map_err(|e| ConfigError::new(e.to_string()))?;
        Ok(Prepared { scenario: sc, map, hyperplanes, grid, quadrature })
    }
}
