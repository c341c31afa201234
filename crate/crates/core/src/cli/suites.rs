//! Seeded random instances for the exact `p = 1` suites.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::symbolic::{find_witness_family, GaussianRational, HyperplaneFamily, Polynomial, ProjectiveMap};
use crate::words::{OperatorSet, Word};

fn small_gaussian(rng: &mut ChaCha8Rng, bound: i64) -> GaussianRational {
    GaussianRational::from_parts((rng.random_range(-bound..=bound), 1), (rng.random_range(-bound..=bound), 1))
}

fn nonzero_gaussian(rng: &mut ChaCha8Rng, bound: i64) -> GaussianRational {
    loop {
        let c = small_gaussian(rng, bound);
        if !num_traits::Zero::is_zero(&c) {
            return c;
        }
    }
}

/// `c·Π (z − a_k)^{m_k}` with distinct Gaussian-integer roots, multiplicities
/// up to 4 and total degree at most `max_degree`.
fn random_factored(rng: &mut ChaCha8Rng, max_degree: u32) -> Polynomial {
    let mut roots: Vec<GaussianRational> = Vec::new();
    let mut g = Polynomial::constant(1, nonzero_gaussian(rng, 3));
    let target = rng.random_range(0..=max_degree);
    let mut deg = 0;
    while deg < target {
        let a = small_gaussian(rng, 3);
        if roots.contains(&a) {
            continue;
        }
        let m = rng.random_range(1..=4u32).min(target - deg);
        let lin = Polynomial::univariate(&[-a.clone(), GaussianRational::from_integer(1)]);
        g = &g * &lin.pow(m);
        roots.push(a);
        deg += m;
    }
    g
}

/// `(g, w)` pairs with `deg g ≥ 1` and `1 ≤ |w| ≤ 4`.
pub fn random_pole_cases(count: usize, max_degree: u32, seed: u64) -> Vec<(Polynomial, Word)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x501E);
    (0..count)
        .map(|_| {
            let g = loop {
                let g = random_factored(&mut rng, max_degree.max(1));
                if !g.is_constant() {
                    break g;
                }
            };
            (g, Word::new(vec![1; rng.random_range(1..=4)]))
        })
        .collect()
}

/// Linearly nondegenerate curves in `P^n`, `n ≤ 3`, with components built
/// from repeated factors, hyperplanes in general position containing the
/// coordinate ones, and a witness operator set.
pub fn random_vanishing_instances(
    count: usize,
    max_degree: u32,
    seed: u64,
) -> Vec<(ProjectiveMap, HyperplaneFamily, OperatorSet)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x7A5E);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let n = rng.random_range(1..=3usize);
        let mut comps: Vec<Polynomial> = (0..=n).map(|_| random_factored(&mut rng, max_degree.max(n as u32))).collect();
        // a constant component keeps the map reduced
        comps[0] = Polynomial::one(1);
        comps.shuffle(&mut rng);
        let Ok(map) = ProjectiveMap::new(1, comps) else { continue };
        let Ok(set) = find_witness_family(&map) else { continue };
        let mut rows: Vec<Vec<GaussianRational>> = (0..=n)
            .map(|i| (0..=n).map(|j| GaussianRational::from_integer(i64::from(i == j))).collect())
            .collect();
        let extra = rng.random_range(1..=2);
        for _ in 0..extra {
            rows.push((0..=n).map(|_| nonzero_gaussian(&mut rng, 4)).collect());
        }
        let Ok(h) = HyperplaneFamily::new(rows) else { continue };
        if h.general_position_violation().is_some() {
            continue;
        }
        out.push((map, h, set));
    }
    out
}
