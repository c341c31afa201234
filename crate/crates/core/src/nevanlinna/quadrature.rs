//! Quadrature for the normalized invariant measure on the sphere `‖z‖ = r`
//! in `C^p`.
//!
//! Points are built from `2p − 1` unit-interval coordinates: `p − 1` of them
//! give squared moduli `t` uniform on the simplex (stick breaking), the
//! other `p` give phases. `z_j = r·√t_j·e^{iθ_j}` is then uniformly
//! distributed on the sphere.

use std::f64::consts::TAU;
use std::num::NonZeroUsize;

use gauss_quad::legendre::GaussLegendre;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::NevanlinnaError;

pub const MIN_NODES: usize = 64;
const RESEED_ATTEMPTS: u64 = 8;
const HALTON_BASES: [u8; 11] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scheme {
    /// Gauss–Legendre in the simplex coordinates, trapezoid in the phases,
    /// under a seeded random unitary rotation.
    ProductRule,
    /// Halton points with a seeded Cranley–Patterson shift.
    LowDiscrepancy,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadratureSpec {
    pub scheme: Scheme,
    /// Approximate total number of nodes on the sphere.
    pub node_count: usize,
    pub seed: u64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec { scheme: Scheme::ProductRule, node_count: 1024, seed: 0 }
    }
}

impl QuadratureSpec {
    pub fn new(scheme: Scheme, node_count: usize, seed: u64) -> Result<Self, NevanlinnaError> {
        let spec = QuadratureSpec { scheme, node_count, seed };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<(), NevanlinnaError> {
        if self.node_count < MIN_NODES {
            return Err(NevanlinnaError::InvalidQuadrature(format!(
                "node_count {} is below the minimum {MIN_NODES}",
                self.node_count
            )));
        }
        Ok(())
    }

    pub fn with_seed(self, seed: u64) -> Self {
        QuadratureSpec { seed, ..self }
    }

    pub fn with_nodes(self, node_count: usize) -> Self {
        QuadratureSpec { node_count, ..self }
    }

    /// Seed of the `k`-th independent replicate.
    pub fn replicate_seed(&self, k: u64) -> u64 {
        self.seed.wrapping_add(k.wrapping_mul(0x9E37_79B9_7F4A_7C15))
    }
}

/// A mean together with its estimated standard error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub value: f64,
    pub stderr: f64,
}

impl Estimate {
    pub fn from_samples(samples: &[f64]) -> Estimate {
        let k = samples.len() as f64;
        let value = samples.iter().sum::<f64>() / k;
        if samples.len() < 2 {
            return Estimate { value, stderr: 0.0 };
        }
        let var = samples.iter().map(|s| (s - value).powi(2)).sum::<f64>() / (k - 1.0);
        Estimate { value, stderr: (var / k).sqrt() }
    }
}

/// Nodes on the unit sphere of `C^p` with weights summing to one.
#[derive(Debug, Clone)]
pub struct SphereRule {
    p: usize,
    nodes: Vec<Vec<Complex64>>,
    weights: Vec<f64>,
}

impl SphereRule {
    pub fn new(p: usize, spec: &QuadratureSpec) -> Result<Self, NevanlinnaError> {
        spec.validate()?;
        if p == 0 {
            return Err(NevanlinnaError::InvalidQuadrature("dimension p must be at least 1".into()));
        }
        let rule = match spec.scheme {
            Scheme::ProductRule => product_rule(p, spec),
            Scheme::LowDiscrepancy => halton_rule(p, spec)?,
        };
        Ok(rule)
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[Vec<Complex64>] {
        &self.nodes
    }

    /// Averages of `k` integrands evaluated together at each node of the
    /// sphere of radius `r`. Fails on the first non-finite sample.
    pub fn average_many<F>(&self, r: f64, k: usize, h: F) -> Result<Vec<f64>, NevanlinnaError>
    where
        F: Fn(&[Complex64]) -> Vec<f64> + Sync,
    {
        if !(r > 0.0) {
            return Err(NevanlinnaError::InvalidRadius(r));
        }
        let samples: Vec<Vec<f64>> = self
            .nodes
            .par_iter()
            .map(|u| {
                let z: Vec<Complex64> = u.iter().map(|c| c * r).collect();
                h(&z)
            })
            .collect();
        let mut acc = vec![0.0; k];
        for (idx, (s, w)) in samples.iter().zip(&self.weights).enumerate() {
            debug_assert_eq!(s.len(), k);
            for (a, v) in acc.iter_mut().zip(s) {
                if !v.is_finite() {
                    return Err(NevanlinnaError::QuadratureFailure {
                        node: idx,
                        point: self.nodes[idx].iter().map(|c| [c.re * r, c.im * r]).collect(),
                    });
                }
                *a += w * v;
            }
        }
        Ok(acc)
    }

    pub fn average<F>(&self, r: f64, h: F) -> Result<f64, NevanlinnaError>
    where
        F: Fn(&[Complex64]) -> f64 + Sync,
    {
        Ok(self.average_many(r, 1, |z| vec![h(z)])?[0])
    }
}

/// `∫_{‖z‖=r} h γ` with the normalized invariant measure.
pub fn sphere_average<F>(h: F, p: usize, r: f64, quad: &QuadratureSpec) -> Result<f64, NevanlinnaError>
where
    F: Fn(&[Complex64]) -> f64 + Sync,
{
    SphereRule::new(p, quad)?.average(r, h)
}

/// Like [`sphere_average`] but redraws the nodes with a fresh seed when a
/// node lands on a singularity of `h`.
pub fn sphere_average_reseeding<F>(h: F, p: usize, r: f64, quad: &QuadratureSpec) -> Result<f64, NevanlinnaError>
where
    F: Fn(&[Complex64]) -> f64 + Sync,
{
    with_reseeding(quad, |spec| sphere_average(&h, p, r, spec))
}

/// Mean and standard error over `replicates` independently seeded rules.
pub fn replicated_average<F>(
    h: F,
    p: usize,
    r: f64,
    quad: &QuadratureSpec,
    replicates: usize,
) -> Result<Estimate, NevanlinnaError>
where
    F: Fn(&[Complex64]) -> f64 + Sync,
{
    let values = (0..replicates.max(1) as u64)
        .map(|k| sphere_average_reseeding(&h, p, r, &quad.with_seed(quad.replicate_seed(k))))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Estimate::from_samples(&values))
}

pub(crate) fn with_reseeding<T>(
    quad: &QuadratureSpec,
    mut run: impl FnMut(&QuadratureSpec) -> Result<T, NevanlinnaError>,
) -> Result<T, NevanlinnaError> {
    let mut last = None;
    for attempt in 0..RESEED_ATTEMPTS {
        let spec = quad.with_seed(quad.seed.wrapping_add(attempt.wrapping_mul(0xD1B5_4A32_D192_ED03)));
        match run(&spec) {
            Err(e @ NevanlinnaError::QuadratureFailure { .. }) => last = Some(e),
            other => return other,
        }
    }
    Err(last.expect("at least one attempt"))
}

/// Uniform point on the sphere from `2p − 1` coordinates in `[0, 1)`.
fn sphere_point(p: usize, simplex: &[f64], phases: &[f64]) -> Vec<Complex64> {
    let mut rem = 1.0;
    let mut out = Vec::with_capacity(p);
    for j in 0..p {
        let t = if j + 1 == p {
            rem
        } else {
            let v: f64 = simplex[j];
            rem * (1.0 - (1.0 - v).powf(1.0 / (p - 1 - j) as f64))
        };
        rem -= t;
        out.push(Complex64::from_polar(t.max(0.0).sqrt(), TAU * phases[j]));
    }
    out
}

fn product_rule(p: usize, spec: &QuadratureSpec) -> SphereRule {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    if p == 1 {
        let n = spec.node_count;
        let delta: f64 = rng.random();
        let nodes = (0..n).map(|k| vec![Complex64::from_polar(1.0, TAU * (k as f64 + delta) / n as f64)]).collect();
        return SphereRule { p, nodes, weights: vec![1.0 / n as f64; n] };
    }
    let dims = 2 * p - 1;
    let base = ((spec.node_count as f64).powf(1.0 / dims as f64).floor() as usize).max(2);
    let n_v = base;
    let n_theta = (((spec.node_count as f64) / (n_v as f64).powi(p as i32 - 1)).powf(1.0 / p as f64).floor() as usize)
        .max(base);
    let gl = GaussLegendre::new(NonZeroUsize::new(n_v).unwrap());
    let v_nodes: Vec<(f64, f64)> = gl.iter().map(|&(x, w)| (0.5 * (x + 1.0), 0.5 * w)).collect();
    let offsets: Vec<f64> = (0..p).map(|_| rng.random()).collect();
    let u = random_unitary(p, &mut rng);

    let mut nodes = Vec::new();
    let mut weights = Vec::new();
    let mut v_idx = vec![0usize; p - 1];
    loop {
        let simplex: Vec<f64> = v_idx.iter().map(|&i| v_nodes[i].0).collect();
        let wv: f64 = v_idx.iter().map(|&i| v_nodes[i].1).product();
        let mut th_idx = vec![0usize; p];
        loop {
            let phases: Vec<f64> =
                th_idx.iter().zip(&offsets).map(|(&k, d)| (k as f64 + d) / n_theta as f64).collect();
            nodes.push(apply(&u, &sphere_point(p, &simplex, &phases)));
            weights.push(wv / (n_theta as f64).powi(p as i32));
            if !advance(&mut th_idx, n_theta) {
                break;
            }
        }
        if !advance(&mut v_idx, n_v) {
            break;
        }
    }
    SphereRule { p, nodes, weights }
}

fn halton_rule(p: usize, spec: &QuadratureSpec) -> Result<SphereRule, NevanlinnaError> {
    let dims = 2 * p - 1;
    if dims > HALTON_BASES.len() {
        return Err(NevanlinnaError::InvalidQuadrature(format!("low-discrepancy rule supports p <= {}", 6)));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let shift: Vec<f64> = (0..dims).map(|_| rng.random()).collect();
    let n = spec.node_count;
    let nodes = (1..=n)
        .map(|i| {
            let x: Vec<f64> = (0..dims).map(|d| (halton::number(HALTON_BASES[d], i) + shift[d]).fract()).collect();
            sphere_point(p, &x[..p - 1], &x[p - 1..])
        })
        .collect();
    Ok(SphereRule { p, nodes, weights: vec![1.0 / n as f64; n] })
}

fn advance(idx: &mut [usize], base: usize) -> bool {
    for i in idx.iter_mut() {
        *i += 1;
        if *i < base {
            return true;
        }
        *i = 0;
    }
    false
}

/// Haar-distributed unitary matrix (Gram–Schmidt on complex Gaussian columns).
fn random_unitary(p: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<Complex64>> {
    let mut cols: Vec<Vec<Complex64>> = Vec::with_capacity(p);
    while cols.len() < p {
        let mut v: Vec<Complex64> = (0..p)
            .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
            .collect();
        for c in &cols {
            let dot: Complex64 = c.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
            for (x, a) in v.iter_mut().zip(c) {
                *x -= dot * a;
            }
        }
        let norm = v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-8 {
            cols.push(v.into_iter().map(|x| x / norm).collect());
        }
    }
    cols
}

fn apply(u: &[Vec<Complex64>], z: &[Complex64]) -> Vec<Complex64> {
    let p = z.len();
    (0..p).map(|i| (0..p).map(|j| u[j][i] * z[j]).sum()).collect()
}
