mod common;

use common::{cocommutative_presentation, commutator_word, word, CASES};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(CASES))]

    #[test]
    fn fundamental_identity(w in word(50)) {
        common::fundamental_identity(&w)?;
    }

    #[test]
    fn product_rule(u in word(30), v in word(30)) {
        common::product_rule(&u, &v)?;
    }

    #[test]
    fn derivatives_see_the_winding_invariant(w in commutator_word(40)) {
        common::winding_linkage(&w)?;
    }

    #[test]
    fn boundary_factors_through_lambda(t in cocommutative_presentation()) {
        common::boundary_is_outer_product(&t)?;
    }
}
