//! The Fermat form `Q(ω) = Σ ω_i^d` and the power endomorphism
//! `[ω_0 : … : ω_n] ↦ [ω_0^d : … : ω_n^d]`.

use super::gcd::gcd_many;
use super::map::ProjectiveMap;
use super::poly::Polynomial;
use super::SymbolicError;

/// Result of pushing a map through the power endomorphism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FermatPush {
    pub map: ProjectiveMap,
    /// Common factor divided out of the powered components (monic; `1` when
    /// the input was reduced).
    pub removed_factor: Polynomial,
}

/// Component-wise `d`-th powers, reduced by the gcd of the components.
pub fn fermat_push(map: &ProjectiveMap, d: u32) -> Result<FermatPush, SymbolicError> {
    if d == 0 {
        return Err(SymbolicError::Unsupported("power endomorphism needs d >= 1".into()));
    }
    let powered: Vec<Polynomial> = map.components().iter().map(|f| f.pow(d)).collect();
    let g = gcd_many(&powered);
    let reduced = powered.iter().map(|f| f.div_exact(&g).expect("gcd divides")).collect();
    Ok(FermatPush { map: ProjectiveMap::new(map.p(), reduced)?, removed_factor: g })
}

/// `Q∘f = Σ_j f_j^d`; identically zero iff the image lies on the Fermat
/// hypersurface of degree `d`.
pub fn fermat_membership(map: &ProjectiveMap, d: u32) -> Polynomial {
    map.components().iter().fold(Polynomial::zero(map.p()), |acc, f| &acc + &f.pow(d))
}

/// The Fermat form itself as a polynomial in `w_0..w_n`.
pub fn fermat_form(n: usize, d: u32) -> Polynomial {
    let mut acc = Polynomial::zero(n + 1);
    for j in 0..=n {
        acc = &acc + &Polynomial::var(n + 1, j).pow(d);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::parse::parse_polynomial as pp;

    #[test]
    fn push_examples() {
        let m = ProjectiveMap::parse(1, &["1", "z"]).unwrap();
        assert_eq!(fermat_push(&m, 2).unwrap().map, ProjectiveMap::parse(1, &["1", "z^2"]).unwrap());

        let m = ProjectiveMap::parse(1, &["1", "i*z", "z"]).unwrap();
        let pushed = fermat_push(&m, 2).unwrap();
        assert_eq!(pushed.map, ProjectiveMap::parse(1, &["1", "-z^2", "z^2"]).unwrap());
        assert_eq!(pushed.removed_factor, pp("1", 1).unwrap());
    }

    #[test]
    fn membership_examples() {
        let on = ProjectiveMap::parse(1, &["1", "i", "z", "i*z"]).unwrap();
        assert!(fermat_membership(&on, 2).is_zero());
        let omit = ProjectiveMap::parse(1, &["1", "i*(z^2 - 3*z)", "z^2 - 3*z"]).unwrap();
        assert_eq!(fermat_membership(&omit, 2), pp("1", 1).unwrap());
        let line = ProjectiveMap::parse(1, &["1", "z"]).unwrap();
        assert_eq!(fermat_membership(&line, 2), pp("1 + z^2", 1).unwrap());
    }

    #[test]
    fn pushed_map_lies_in_sum_hyperplane() {
        let on = ProjectiveMap::parse(1, &["1", "i", "z", "i*z"]).unwrap();
        let g = fermat_push(&on, 2).unwrap().map;
        let ones: Vec<_> = (0..4).map(|_| crate::symbolic::GaussianRational::from_integer(1)).collect();
        assert!(crate::symbolic::compose_linear_form(&g, &ones).unwrap().is_zero());
        assert_eq!(fermat_form(3, 2).compose(on.components()), fermat_membership(&on, 2));
    }
}
