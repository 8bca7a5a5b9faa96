mod common;

use common::{letters, word, CASES};
use proptest::prelude::*;
use strongac::words::{parse_word, Letter, Word};

/// Cancels adjacent inverse pairs one at a time, choosing which pair from
/// `choices`, until none remain.
fn reduce_in_order(mut ls: Vec<Letter>, choices: &[usize]) -> Vec<Letter> {
    let mut n = 0;
    loop {
        let pairs: Vec<usize> = (0..ls.len().saturating_sub(1))
            .filter(|&k| ls[k].inv() == ls[k + 1])
            .collect();
        if pairs.is_empty() {
            return ls;
        }
        let pick = choices.get(n).copied().unwrap_or(0) % pairs.len();
        let k = pairs[pick];
        ls.drain(k..k + 2);
        n += 1;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(CASES))]

    #[test]
    fn inverse_cancels(u in word(60)) {
        prop_assert!(u.mul(&u.inverse()).is_empty());
        prop_assert!(u.inverse().mul(&u).is_empty());
        prop_assert_eq!(u.inverse().inverse(), u);
    }

    #[test]
    fn multiplication_is_associative(u in word(60), v in word(60), w in word(60)) {
        prop_assert_eq!(u.mul(&v).mul(&w), u.mul(&v.mul(&w)));
        prop_assert_eq!(u.mul(&Word::identity()), u);
    }

    #[test]
    fn reduction_is_confluent(ls in letters(80), choices in prop::collection::vec(any::<usize>(), 40)) {
        let canonical = Word::from_letters(ls.clone());
        let other = reduce_in_order(ls, &choices);
        prop_assert_eq!(canonical.letters(), other.as_slice());
    }

    #[test]
    fn display_round_trips(u in word(60)) {
        prop_assert_eq!(parse_word(&u.to_string()).unwrap(), u);
    }

    #[test]
    fn trace_of_product(u in word(30), v in word(30)) {
        let tu = u.trace_path().unwrap();
        let tv = v.trace_path().unwrap();
        let (a, b) = tu.end();
        let uv = u.mul(&v);
        let t = uv.trace_path().unwrap();
        prop_assert_eq!(t.end(), (a + tv.end().0, b + tv.end().1));
        if uv.len() == u.len() + v.len() {
            let mut expected = tu.points.clone();
            expected.extend(tv.points.iter().skip(1).map(|&(i, j)| (i + a, j + b)));
            prop_assert_eq!(t.points, expected);
        }
    }

    #[test]
    fn cyclic_reduction_splits(u in word(40)) {
        let (core, g) = u.cyclic_reduce();
        prop_assert!(core.is_cyclically_reduced());
        prop_assert_eq!(core.conjugate_by(&g), u);
    }

    #[test]
    fn conjugates_are_detected(u in word(20), g in word(10), k in 0usize..20) {
        let target = u.rotate(k % (u.len().max(1))).conjugate_by(&g);
        let h = u.conjugator_to(&target).unwrap();
        prop_assert_eq!(u.conjugate_by(&h), target);
    }

    #[test]
    fn exponent_sums_are_additive(u in word(40), v in word(40)) {
        let (a, b) = u.exponent_sums();
        let (c, d) = v.exponent_sums();
        prop_assert_eq!(u.mul(&v).exponent_sums(), (a + c, b + d));
    }
}
