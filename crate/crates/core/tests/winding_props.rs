mod common;

use common::{commutator_word, word, CASES};
use proptest::prelude::*;
use strongac::winding::{equal_mod_second_derived, winding_grid_oracle_with};
use strongac::Execution;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(CASES))]

    #[test]
    fn additive(w in commutator_word(40), v in commutator_word(40)) {
        common::winding_additive(&w, &v)?;
    }

    #[test]
    fn inverse_negates(w in commutator_word(40)) {
        common::winding_inverse(&w)?;
    }

    #[test]
    fn conjugation_shifts(w in commutator_word(40), u in word(12)) {
        common::winding_conjugate(&w, &u)?;
    }

    #[test]
    fn commutator_multiplies(w in commutator_word(40), u in word(12)) {
        common::winding_commutator(&w, &u)?;
    }

    #[test]
    fn incremental_matches_ray_casting(w in commutator_word(40)) {
        common::oracle_equivalence(&w)?;
    }

    #[test]
    fn oracle_modes_agree(w in commutator_word(40)) {
        prop_assert_eq!(
            winding_grid_oracle_with(&w, Execution::Sequential).unwrap(),
            winding_grid_oracle_with(&w, Execution::Parallel).unwrap()
        );
    }

    #[test]
    fn second_derived_commutators_vanish(u in commutator_word(20), v in commutator_word(20), w in commutator_word(20)) {
        prop_assert!(equal_mod_second_derived(&w.mul(&u.commutator(&v)), &w));
    }
}
