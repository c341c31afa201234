//! Maps into, or omitting, the Fermat hypersurface `Σ ω_i^d = 0`.
//!
//! Both checks push `f` through `π(ω) = (ω_0^d, …, ω_n^d)`. Zeros of every
//! coordinate of `g = π∘f` then have multiplicity at least `d`, and `g`
//! either lies in, or avoids, the hyperplane `Σ ω_i = 0`.

use crate::nevanlinna::divisor_p1;
use crate::symbolic::{
    compose_linear_form, fermat_membership, fermat_push, generic_rank, is_linearly_independent, linear_relations,
    GaussianRational, ProjectiveMap,
};

use super::{format_linear_form, kappa, RamificationEstimate, TheoremError, TheoremId, Verdict, VerificationReport};

fn require_maximal_rank(map: &ProjectiveMap) -> Result<(), TheoremError> {
    let expected = map.p().min(map.n());
    let rank = generic_rank(map);
    if rank < expected {
        return Err(TheoremError::NotMaximalRank { rank, expected });
    }
    Ok(())
}

/// Smallest zero multiplicity of each coordinate of `g` (`None` if it has
/// no zeros). For `p ≥ 2` only the bound `≥ d` is established, through the
/// exact identity `g_j = f_j^d`.
fn coordinate_multiplicities(map: &ProjectiveMap, g: &ProjectiveMap, d: u32) -> (Vec<Option<u32>>, bool) {
    if map.p() == 1 {
        let mu: Vec<Option<u32>> = g
            .components()
            .iter()
            .map(|c| if c.is_zero() { None } else { divisor_p1(c).min_multiplicity() })
            .collect();
        let ok = mu.iter().all(|m| m.is_none_or(|m| m >= d));
        return (mu, ok);
    }
    let ok = map.components().iter().zip(g.components()).all(|(f, gj)| f.pow(d) == *gj);
    let mu = g.components().iter().map(|c| (!c.is_constant()).then_some(d)).collect();
    (mu, ok)
}

fn mu_json(mu: &[Option<u32>]) -> serde_json::Value {
    serde_json::to_value(RamificationEstimate { mu: mu.to_vec(), sampled: false }).unwrap()["mu"].clone()
}

/// Image in the Fermat hypersurface: checks the push-forward lies in
/// `Σ ω_i = 0`, the multiplicity bound, and reports linear degeneracy of
/// `f` (a hyperplane section containing the image) together with whether
/// `d > (n+1)·κ(p, n−1)` forces it.
pub fn fermat_section_check(map: &ProjectiveMap, d: u32) -> Result<VerificationReport, TheoremError> {
    let residual = fermat_membership(map, d);
    if !residual.is_zero() {
        return Err(TheoremError::NotOnFermat { d, residual: residual.to_string() });
    }
    require_maximal_rank(map)?;
    let (p, n) = (map.p(), map.n());
    let push = fermat_push(map, d)?;
    let g = push.map;
    let ones = vec![GaussianRational::from_integer(1); n + 1];
    let in_sum_hyperplane = compose_linear_form(&g, &ones)?.is_zero();
    let (mu, mult_ok) = coordinate_multiplicities(map, &g, d);

    let threshold = (n + 1) * if n >= 2 { kappa(p, n - 1) } else { 1 };
    let applies = d as usize > threshold;
    let f_relations = linear_relations(map.components());
    let degenerate = !f_relations.is_empty();
    let g_indep = is_linearly_independent(g.components())?;
    let g_relations = linear_relations(g.components());

    let mut rep = VerificationReport::new(TheoremId::FermatSection);
    rep.detail("d", d);
    rep.detail("pushed_map", g.to_string());
    rep.detail("removed_factor", push.removed_factor.to_string());
    rep.detail("image_in_sum_hyperplane", in_sum_hyperplane);
    rep.detail("coordinate_min_multiplicity", mu_json(&mu));
    rep.detail("multiplicities_at_least_d", mult_ok);
    rep.detail("threshold", threshold);
    rep.detail("theorem_applies", applies);
    rep.detail("pushed_relation_dimension", g_relations.len());
    rep.detail("pushed_independent", g_indep.independent);
    rep.detail("degenerate", degenerate);
    if let Some(h) = f_relations.first() {
        rep.detail("hyperplane", format_linear_form(h));
    }
    if !applies {
        rep.notes.push(format!("d = {d} does not exceed (n+1)·κ = {threshold}; degeneracy reported, not forced"));
    }
    rep.verdict = Verdict::from_bool(in_sum_hyperplane && mult_ok && (!applies || degenerate));
    Ok(rep)
}

/// Omitting the Fermat hypersurface: `Σ f_j^d` must be a nonzero constant.
/// Runs the ramification count for `g` over the `n + 2` hyperplanes
/// `ω_0, …, ω_n, Σ ω_i` and reports algebraic degeneracy of `f` through
/// linear degeneracy of `g`, with whether `d > (n+1)·κ(p, n)` forces it.
pub fn fermat_omit_check(map: &ProjectiveMap, d: u32) -> Result<VerificationReport, TheoremError> {
    let residual = fermat_membership(map, d);
    if residual.is_zero() || !residual.is_constant() {
        return Err(TheoremError::DoesNotOmit { d, residual: residual.to_string() });
    }
    require_maximal_rank(map)?;
    let (p, n) = (map.p(), map.n());
    let push = fermat_push(map, d)?;
    let g = push.map;
    let ones = vec![GaussianRational::from_integer(1); n + 1];
    let sum = compose_linear_form(&g, &ones)?;
    let avoids = sum.is_constant() && !sum.is_zero();
    let (mut mu, mult_ok) = coordinate_multiplicities(map, &g, d);
    mu.push(None);
    let k = kappa(p, n);
    let ram = RamificationEstimate { mu: mu.clone(), sampled: false };
    let ram_sum = ram.defect_sum(k);
    let ram_ok = ram_sum <= (n + 1) as f64 + 1e-12;

    let threshold = (n + 1) * k;
    let applies = d as usize > threshold;
    let g_indep = is_linearly_independent(g.components())?;
    let relations = linear_relations(g.components());
    let degenerate = !g_indep.independent;

    let mut rep = VerificationReport::new(TheoremId::FermatOmit);
    rep.detail("d", d);
    rep.detail("fermat_value", residual.to_string());
    rep.detail("pushed_map", g.to_string());
    rep.detail("avoids_sum_hyperplane", avoids);
    rep.detail("mu", mu_json(&mu));
    rep.detail("multiplicities_at_least_d", mult_ok);
    rep.detail("kappa", k);
    rep.detail("ramification_sum", ram_sum);
    rep.detail("ramification_bound", n + 1);
    rep.detail("threshold", threshold);
    rep.detail("theorem_applies", applies);
    rep.detail("degenerate", degenerate);
    if let Some(rel) = relations.first() {
        rep.detail("pushed_relation", format_linear_form(rel));
        rep.detail("algebraic_relation", power_relation(rel, d));
    }
    if degenerate && !ram_ok {
        rep.notes.push("ramification bound exceeded; its hypotheses fail since the push-forward is degenerate".into());
    }
    if !applies {
        rep.notes.push(format!("d = {d} does not exceed (n+1)·κ = {threshold}; degeneracy reported, not forced"));
    }
    rep.verdict = Verdict::from_bool(avoids && mult_ok && (degenerate || ram_ok) && (!applies || degenerate));
    Ok(rep)
}

/// `Σ c_j w_j^d` for a relation among the pushed coordinates.
fn power_relation(rel: &[GaussianRational], d: u32) -> String {
    let terms: Vec<String> = rel
        .iter()
        .enumerate()
        .filter(|(_, c)| !num_traits::Zero::is_zero(*c))
        .map(|(j, c)| {
            if num_traits::One::is_one(c) {
                format!("w{j}^{d}")
            } else {
                format!("{c}*w{j}^{d}")
            }
        })
        .collect();
    terms.join(" + ")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn section_on_the_fermat_quadric() {
        let f = ProjectiveMap::parse(1, &["1", "i", "z", "i*z"]).unwrap();
        let rep = fermat_section_check(&f, 2).unwrap();
        assert!(rep.passed());
        assert_eq!(rep.get("degenerate").unwrap(), true);
        assert_eq!(rep.get("image_in_sum_hyperplane").unwrap(), true);
        assert_eq!(rep.get("multiplicities_at_least_d").unwrap(), true);
        assert_eq!(rep.get("pushed_map").unwrap(), "[1 : -1 : z^2 : -z^2]");
        assert_eq!(rep.get("pushed_relation_dimension").unwrap(), 2);
        // the hyperplane is a multiple of w1 − i·w0
        let h = rep.get("hyperplane").unwrap().as_str().unwrap();
        assert!(h.contains("w0") && h.contains("w1") && !h.contains("w2"), "{h}");
    }

    #[test]
    fn off_the_fermat_quadric() {
        let f = ProjectiveMap::parse(1, &["1", "i", "z", "i*z + 1"]).unwrap();
        assert!(matches!(fermat_section_check(&f, 2), Err(TheoremError::NotOnFermat { .. })));
    }

    #[test]
    fn omitting_the_fermat_conic() {
        let f = ProjectiveMap::parse(1, &["1", "i*z^3", "z^3"]).unwrap();
        let rep = fermat_omit_check(&f, 2).unwrap();
        assert!(rep.passed());
        assert_eq!(rep.get("degenerate").unwrap(), true);
        assert_eq!(rep.get("avoids_sum_hyperplane").unwrap(), true);
        assert_eq!(rep.get("mu").unwrap(), &serde_json::json!(["inf", 6, 6, "inf"]));

        let line = ProjectiveMap::parse(1, &["1", "z"]).unwrap();
        assert!(matches!(fermat_omit_check(&line, 2), Err(TheoremError::DoesNotOmit { .. })));
        let perturbed = ProjectiveMap::parse(1, &["1", "i*z^3", "z^3 + 1"]).unwrap();
        assert!(matches!(fermat_omit_check(&perturbed, 2), Err(TheoremError::DoesNotOmit { .. })));
    }

    #[test]
    fn bivariate_section() {
        // f = [1 : i : z1 : i·z1 : z2 : i·z2] lies on the Fermat quadric in P^5
        let f = ProjectiveMap::parse(2, &["1", "i", "z1", "i*z1", "z2", "i*z2"]).unwrap();
        let rep = fermat_section_check(&f, 2).unwrap();
        assert!(rep.passed());
        assert_eq!(rep.get("degenerate").unwrap(), true);
        assert_eq!(rep.get("multiplicities_at_least_d").unwrap(), true);
    }
}
