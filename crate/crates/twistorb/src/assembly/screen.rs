//! Torsion vanishing screen: which of the four sufficient conditions for
//! T_σ = 0 hold for a ledger.
//!
//!   1. m even and σ preserves the orientation of p;
//!   2. m odd and σ does not preserve the orientation of p;
//!   3. (E, ρ^E) irreducible for U^σ but not for U (twisted characters vanish);
//!   4. ε(γσ) = dim b_σ(γ) ≠ 1 for every ledger class.

use super::ledger::DecomposedClass;
use crate::liecore::{Automorphism, ReductiveAlgebra};
use crate::reps::Irrep;

/// Verdict of the vanishing screen with per-condition reasons.
#[derive(Debug, Clone)]
pub struct VanishingVerdict {
    pub condition_parity_even: bool,
    pub condition_parity_odd: bool,
    pub condition_k_reducible: bool,
    pub condition_epsilon: bool,
    pub epsilon_values: Vec<(String, usize)>,
    pub vanishes: bool,
}

/// Report which vanishing conditions hold; any single one forces T_σ = 0.
pub fn torsion_vanishing_screen(
    alg: &ReductiveAlgebra,
    sigma: &Automorphism,
    classes: &[DecomposedClass],
    irrep: &Irrep,
) -> VanishingVerdict {
    let m_even = alg.dim_p % 2 == 0;
    let preserves = sigma.orientation_on_p(alg) > 0.0;
    let condition_parity_even = m_even && preserves;
    let condition_parity_odd = !m_even && !preserves;
    let condition_k_reducible = !irrep.k_irreducible;
    let epsilon_values: Vec<(String, usize)> = classes
        .iter()
        .map(|dc| (dc.entry.id.clone(), dc.cz.delta_rank))
        .collect();
    let condition_epsilon =
        !classes.is_empty() && epsilon_values.iter().all(|(_, e)| *e != 1);
    let vanishes = condition_parity_even
        || condition_parity_odd
        || condition_k_reducible
        || condition_epsilon;
    VanishingVerdict {
        condition_parity_even,
        condition_parity_odd,
        condition_k_reducible,
        condition_epsilon,
        epsilon_values,
        vanishes,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::assembly::ledger::{decompose_ledger, parse_ledger};
    use crate::liecore::{build_catalog, GroupMap};
    use crate::reps::build_sym_irrep;

    #[test]
    fn sl2r_identity_sigma_vanishes_by_parity() {
        // m = 2 even, σ = id preserves orientation → condition 1
        let alg = build_catalog("sl2r", 1.0).unwrap();
        let sigma = Automorphism::identity(&alg);
        let irrep = build_sym_irrep(&alg, 1, &sigma).unwrap();
        let v = torsion_vanishing_screen(&alg, &sigma, &[], &irrep);
        assert!(v.condition_parity_even);
        assert!(v.vanishes);
    }

    #[test]
    fn sl2c_identity_sigma_does_not_vanish_by_parity() {
        // m = 3 odd, σ = id preserves orientation: both parity conditions fail
        let alg = build_catalog("sl2c_real", 1.0).unwrap();
        let sigma = Automorphism::identity(&alg);
        let irrep = build_sym_irrep(&alg, 1, &sigma).unwrap();
        let text = "id = identity\ngamma = 1,0,0,1\nvolume = 1\nelliptic = true\n";
        let ledger = parse_ledger(&alg, text).unwrap();
        let classes = decompose_ledger(&alg, &sigma, &ledger).unwrap();
        let v = torsion_vanishing_screen(&alg, &sigma, &classes, &irrep);
        assert!(!v.condition_parity_even);
        assert!(!v.condition_parity_odd);
        // ε(identity class) = dim b = 1: condition 4 fails too → no vanishing
        assert_eq!(v.epsilon_values[0].1, 1);
        assert!(!v.vanishes);
    }

    #[test]
    fn theta_on_sl3r_vanishes_by_odd_parity() {
        // m = 5 odd and θ acts by -1 on p: orientation reversed → condition 2
        let alg = build_catalog("sl3r", 1.0).unwrap();
        let sigma = Automorphism::new(&alg, GroupMap::Theta).unwrap();
        let irrep = build_sym_irrep(&alg, 0, &sigma).unwrap();
        let v = torsion_vanishing_screen(&alg, &sigma, &[], &irrep);
        assert!(v.condition_parity_odd);
        assert!(v.vanishes);
    }

    #[test]
    fn epsilon_condition_with_dim_b_zero_or_two() {
        // sl2r elliptic class: dim b = 0 ≠ 1 → condition 4
        let alg = build_catalog("sl2r", 1.0).unwrap();
        let sigma = Automorphism::identity(&alg);
        let text = "id = rot\ngamma = 0.6967067093471654,0.7173560908995228,-0.7173560908995228,0.6967067093471654\nvolume = 1\nelliptic = true\n";
        let ledger = parse_ledger(&alg, text).unwrap();
        let classes = decompose_ledger(&alg, &sigma, &ledger).unwrap();
        let irrep = build_sym_irrep(&alg, 2, &sigma).unwrap();
        let v = torsion_vanishing_screen(&alg, &sigma, &classes, &irrep);
        assert!(v.condition_epsilon);
    }
}
