//! Strategies and property bodies shared by the proptest suites and the
//! acceptance runner.

#![allow(dead_code)]

use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

use strongac::certificates::{Certificate, Sign, Step};
use strongac::foxcalc::{boundary_d2, fox_derivative, fundamental_identity_check};
use strongac::laurent::{rational, LaurentPoly};
use strongac::matrices::outer_product;
use strongac::presentations::{
    apply_move, is_automorphism_rank2, move_lambda_action, Endomorphism, Move, NielsenKind, Presentation,
};
use strongac::winding::{lambda_vector, winding_grid_oracle, winding_invariant};
use strongac::words::{Generator, Letter, Word};

pub const CASES: u32 = 1000;

pub fn letter() -> impl Strategy<Value = Letter> {
    (0..4usize).prop_map(|k| Letter::rank2_alphabet()[k])
}

/// Letter sequence of length `0..=max_len`, not reduced.
pub fn letters(max_len: usize) -> impl Strategy<Value = Vec<Letter>> {
    prop::collection::vec(letter(), 0..=max_len)
}

pub fn word(max_len: usize) -> impl Strategy<Value = Word> {
    letters(max_len).prop_map(Word::from_letters)
}

/// Product of 1 to 6 conjugates of `[x,y]^±1` by words of length at most
/// six, cut back to the longest prefix of factors whose product has at most
/// `max_len` letters.
pub fn commutator_word(max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec((any::<bool>(), word(6)), 1..=6).prop_map(move |factors| {
        let c = Word::x().commutator(&Word::y());
        let mut acc = Word::identity();
        for (invert, g) in factors {
            let base = if invert { c.inverse() } else { c.clone() };
            let next = acc.mul(&base.conjugate_by(&g));
            if next.len() > max_len {
                break;
            }
            acc = next;
        }
        acc
    })
}

pub fn laurent() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec(((-3i64..=3, -3i64..=3), -9i64..=9), 0..=6)
        .prop_map(|terms| LaurentPoly::from_terms(terms).unwrap())
}

pub fn unit() -> impl Strategy<Value = LaurentPoly> {
    (any::<bool>(), -5i64..=5, -5i64..=5).prop_map(|(neg, i, j)| LaurentPoly::monomial(i, j, if neg { -1 } else { 1 }))
}

pub fn cocommutative_presentation() -> impl Strategy<Value = Presentation> {
    prop::collection::vec(commutator_word(40), 2..=3).prop_map(|rs| Presentation::new(2, rs).unwrap())
}

/// Raw Q-move description, resolved against the relator count later.
#[derive(Debug, Clone)]
pub enum RawMove {
    Mult(usize, usize),
    Invert(usize),
    Conj(usize, Word),
}

impl RawMove {
    pub fn resolve(&self, m: usize) -> Move {
        match self {
            RawMove::Mult(j, i) => {
                let j = j % m;
                let i = (j + 1 + i % (m - 1)) % m;
                Move::Mult { j: j + 1, i: i + 1 }
            }
            RawMove::Invert(j) => Move::Invert { j: j % m + 1 },
            RawMove::Conj(j, g) => Move::Conjugate { j: j % m + 1, g: g.clone() },
        }
    }
}

pub fn raw_q_move() -> impl Strategy<Value = RawMove> {
    prop_oneof![
        (0..6usize, 0..6usize).prop_map(|(j, i)| RawMove::Mult(j, i)),
        (0..6usize).prop_map(RawMove::Invert),
        (0..6usize, word(3)).prop_map(|(j, g)| RawMove::Conj(j, g)),
    ]
}

pub fn nielsen() -> impl Strategy<Value = Endomorphism> {
    prop_oneof![
        Just(Endomorphism::nielsen(NielsenKind::Swap)),
        Just(Endomorphism::nielsen(NielsenKind::InvertX)),
        Just(Endomorphism::nielsen(NielsenKind::Shear)),
    ]
}

pub fn nielsen_composition(max_len: usize) -> impl Strategy<Value = Endomorphism> {
    prop::collection::vec(nielsen(), 0..=max_len)
        .prop_map(|fs| fs.iter().fold(Endomorphism::identity(), |acc, f| acc.compose(f)))
}

pub fn certificate(relators: usize, max_steps: usize, max_conj: usize) -> impl Strategy<Value = Certificate> {
    prop::collection::vec((word(max_conj), 1..=relators, any::<bool>()), 0..=max_steps).prop_map(|steps| {
        Certificate::new(
            steps
                .into_iter()
                .map(|(g, idx, minus)| Step::new(g, idx, if minus { Sign::Minus } else { Sign::Plus }))
                .collect(),
        )
    })
}

fn p(w: &Word) -> LaurentPoly {
    winding_invariant(w).unwrap()
}

fn x_minus_1() -> LaurentPoly {
    LaurentPoly::x() - LaurentPoly::one()
}

fn y_minus_1() -> LaurentPoly {
    LaurentPoly::y() - LaurentPoly::one()
}

// Winding invariant laws.

pub fn winding_additive(w: &Word, v: &Word) -> Result<(), TestCaseError> {
    prop_assert_eq!(p(&w.mul(v)), p(w) + p(v));
    Ok(())
}

pub fn winding_inverse(w: &Word) -> Result<(), TestCaseError> {
    prop_assert_eq!(p(&w.inverse()), -p(w));
    Ok(())
}

pub fn winding_conjugate(w: &Word, u: &Word) -> Result<(), TestCaseError> {
    let (k, l) = u.exponent_sums();
    prop_assert_eq!(p(&w.conjugate_by(u)), p(w).shift(k, l));
    Ok(())
}

pub fn winding_commutator(w: &Word, u: &Word) -> Result<(), TestCaseError> {
    let (k, l) = u.exponent_sums();
    let factor = LaurentPoly::monomial(k, l, 1) - LaurentPoly::one();
    prop_assert_eq!(p(&u.commutator(w)), &factor * &p(w));
    Ok(())
}

pub fn oracle_equivalence(w: &Word) -> Result<(), TestCaseError> {
    let grid = winding_grid_oracle(w).unwrap();
    prop_assert_eq!(p(w), grid.to_poly());
    prop_assert_eq!(
        p(w).evaluate(&rational(1, 1), &rational(1, 1)).unwrap(),
        rational(grid.total(), 1)
    );
    Ok(())
}

// Fox calculus.

pub fn fundamental_identity(w: &Word) -> Result<(), TestCaseError> {
    prop_assert!(fundamental_identity_check(w), "fails on {}", w);
    Ok(())
}

pub fn winding_linkage(w: &Word) -> Result<(), TestCaseError> {
    let dx = fox_derivative(w, Generator::X).abelianize().unwrap();
    let dy = fox_derivative(w, Generator::Y).abelianize().unwrap();
    prop_assert_eq!(dx, -(&y_minus_1() * &p(w)));
    prop_assert_eq!(dy, &x_minus_1() * &p(w));
    Ok(())
}

pub fn product_rule(u: &Word, v: &Word) -> Result<(), TestCaseError> {
    for g in [Generator::X, Generator::Y] {
        let lhs = fox_derivative(&u.mul(v), g);
        let rhs = fox_derivative(u, g).add(&fox_derivative(v, g).left_mul_word(u)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
    Ok(())
}

pub fn boundary_is_outer_product(t: &Presentation) -> Result<(), TestCaseError> {
    let outer = outer_product(&[-y_minus_1(), x_minus_1()], &lambda_vector(t).unwrap()).unwrap();
    prop_assert_eq!(boundary_d2(t).unwrap(), outer);
    Ok(())
}

// Moves.

/// Applies `script` to `t`, tracking Λ through the per-move actions, and
/// compares against Λ recomputed from scratch.
pub fn lambda_equivariance(t: &Presentation, script: &[Move]) -> Result<(), TestCaseError> {
    let m = t.relators().len();
    let mut cur = t.clone();
    let mut tracked = lambda_vector(t).unwrap();
    for mv in script {
        cur = apply_move(&cur, mv).unwrap();
        tracked = move_lambda_action(mv, m).unwrap().apply(&tracked).unwrap();
    }
    prop_assert!(cur.is_cocommutative().unwrap());
    prop_assert_eq!(lambda_vector(&cur).unwrap(), tracked);
    Ok(())
}

pub fn magnus_on_nielsen(phi: &Endomorphism) -> Result<(), TestCaseError> {
    prop_assert!(is_automorphism_rank2(phi), "{}", phi);
    let u = p(&phi.apply(&Word::x().commutator(&Word::y())));
    prop_assert!(u.is_unit(), "P = {} for {}", u, phi);
    Ok(())
}

// Certificates.

pub fn certificate_soundness(t: &Presentation, c: &Certificate) -> Result<(), TestCaseError> {
    let w = c.expand(t).unwrap();
    prop_assert!(c.verify(t, &w));
    prop_assert!(c.lambda_consistency(t, &w).unwrap());
    Ok(())
}
