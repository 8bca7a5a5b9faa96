mod common;

use common::{certificate, word, CASES};
use proptest::prelude::*;
use strongac::certificates::{search_certificate, Certificate, CertificateBounds};
use strongac::counterexample::{evans_side, trivial_side};
use strongac::Execution;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(CASES))]

    #[test]
    fn sound_over_trivial_side(c in certificate(2, 6, 6)) {
        common::certificate_soundness(&trivial_side(), &c)?;
    }

    #[test]
    fn sound_over_evans_side(c in certificate(2, 4, 4)) {
        common::certificate_soundness(&evans_side(), &c)?;
    }

    #[test]
    fn text_round_trips(c in certificate(2, 6, 6)) {
        prop_assert_eq!(c.to_string().parse::<Certificate>().unwrap(), c);
    }

    #[test]
    fn combinators_track_expansion(a in certificate(2, 4, 4), b in certificate(2, 4, 4), g in word(6)) {
        let q = evans_side();
        let ea = a.expand(&q).unwrap();
        let eb = b.expand(&q).unwrap();
        prop_assert!(a.inverse().verify(&q, &ea.inverse()));
        prop_assert!(a.concat(&b).verify(&q, &ea.mul(&eb)));
        prop_assert!(a.conjugate_by(&g).verify(&q, &ea.conjugate_by(&g)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn search_finds_short_products(c in certificate(1, 2, 1)) {
        let p = trivial_side();
        let target = c.expand(&p).unwrap();
        let bounds = CertificateBounds { max_steps: 2, max_conjugator_len: 1, execution: Execution::Sequential };
        let found = search_certificate(&p, &target, &bounds).unwrap();
        prop_assert!(found.verify(&p, &target));
    }
}
