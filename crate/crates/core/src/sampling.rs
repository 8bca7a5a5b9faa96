//! Random generators for property checks and benchmarks.

use rand::Rng;

use crate::certificates::{Certificate, Sign, Step};
use crate::laurent::LaurentPoly;
use crate::presentations::{Endomorphism, Move, NielsenKind, Presentation};
use crate::words::{Letter, Word};

/// Uniform random letter sequence of length `0..=max_len`, then reduced.
pub fn word<R: Rng + ?Sized>(rng: &mut R, max_len: usize) -> Word {
    let n = rng.gen_range(0..=max_len);
    let alphabet = Letter::rank2_alphabet();
    Word::from_letters((0..n).map(|_| alphabet[rng.gen_range(0..4)]))
}

/// Product of up to six conjugates of `[x,y]^±1` by words of length at most
/// six; always in the commutator subgroup.
pub fn commutator_word<R: Rng + ?Sized>(rng: &mut R) -> Word {
    let c = Word::x().commutator(&Word::y());
    let factors = rng.gen_range(1..=6);
    (0..factors).fold(Word::identity(), |acc, _| {
        let base = if rng.gen_bool(0.5) { c.clone() } else { c.inverse() };
        acc.mul(&base.conjugate_by(&word(rng, 6)))
    })
}

/// [`commutator_word`] resampled until its length is at most `max_len`.
pub fn commutator_word_within<R: Rng + ?Sized>(rng: &mut R, max_len: usize) -> Word {
    loop {
        let w = commutator_word(rng);
        if w.len() <= max_len {
            return w;
        }
    }
}

/// Up to `max_terms` terms with exponents in `-exp..=exp` and coefficients
/// in `-coeff..=coeff`.
pub fn laurent<R: Rng + ?Sized>(rng: &mut R, max_terms: usize, exp: i64, coeff: i64) -> LaurentPoly {
    let n = rng.gen_range(0..=max_terms);
    LaurentPoly::from_terms((0..n).map(|_| {
        (
            (rng.gen_range(-exp..=exp), rng.gen_range(-exp..=exp)),
            rng.gen_range(-coeff..=coeff),
        )
    }))
    .expect("small coefficients")
}

pub fn cocommutative_presentation<R: Rng + ?Sized>(rng: &mut R, relators: usize) -> Presentation {
    Presentation::new(2, (0..relators).map(|_| commutator_word_within(rng, 40)).collect()).expect("rank 2")
}

/// A Q-move (mult / invert / conj) on `m >= 2` relators.
pub fn q_move<R: Rng + ?Sized>(rng: &mut R, m: usize, max_conjugator_len: usize) -> Move {
    let j = rng.gen_range(1..=m);
    match rng.gen_range(0..3) {
        0 => {
            let mut i = rng.gen_range(1..m);
            if i >= j {
                i += 1;
            }
            Move::Mult { j, i }
        }
        1 => Move::Invert { j },
        _ => Move::Conjugate {
            j,
            g: word(rng, max_conjugator_len),
        },
    }
}

pub fn nielsen_composition<R: Rng + ?Sized>(rng: &mut R, len: usize) -> Endomorphism {
    let kinds = [NielsenKind::Swap, NielsenKind::InvertX, NielsenKind::Shear];
    (0..len).fold(Endomorphism::identity(), |acc, _| {
        acc.compose(&Endomorphism::nielsen(kinds[rng.gen_range(0..3)]))
    })
}

pub fn certificate<R: Rng + ?Sized>(rng: &mut R, relators: usize, max_steps: usize, max_conjugator_len: usize) -> Certificate {
    let n = rng.gen_range(0..=max_steps);
    Certificate::new(
        (0..n)
            .map(|_| {
                Step::new(
                    word(rng, max_conjugator_len),
                    rng.gen_range(1..=relators),
                    if rng.gen_bool(0.5) { Sign::Plus } else { Sign::Minus },
                )
            })
            .collect(),
    )
}
