//! Fox derivatives in the integral group ring of a free group.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::laurent::{LaurentError, LaurentPoly};
use crate::matrices::LaurentMatrix;
use crate::presentations::Presentation;
use crate::words::{Generator, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FoxError {
    #[error("expected a presentation on two generators, got {0}")]
    WrongRank(usize),
    #[error("word `{0}` uses generators other than x and y")]
    NotRank2(String),
    #[error("coefficient overflow in group ring")]
    Overflow,
    #[error(transparent)]
    Laurent(#[from] LaurentError),
}

/// Finite Z-linear combination of reduced words.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GroupRingElement {
    terms: BTreeMap<Word, i64>,
}

impl GroupRingElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_word(Word::identity())
    }

    pub fn from_word(w: Word) -> Self {
        GroupRingElement {
            terms: BTreeMap::from([(w, 1)]),
        }
    }

    pub fn from_terms<I: IntoIterator<Item = (Word, i64)>>(terms: I) -> Result<Self, FoxError> {
        let mut e = Self::zero();
        for (w, c) in terms {
            e.add_term(w, c)?;
        }
        Ok(e)
    }

    pub fn add_term(&mut self, w: Word, c: i64) -> Result<(), FoxError> {
        if c == 0 {
            return Ok(());
        }
        let slot = self.terms.entry(w).or_insert(0);
        *slot = slot.checked_add(c).ok_or(FoxError::Overflow)?;
        if *slot == 0 {
            self.terms.retain(|_, c| *c != 0);
        }
        Ok(())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, i64)> {
        self.terms.iter().map(|(w, &c)| (w, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Result<Self, FoxError> {
        let mut out = self.clone();
        for (w, c) in other.terms() {
            out.add_term(w.clone(), c)?;
        }
        Ok(out)
    }

    pub fn neg(&self) -> Result<Self, FoxError> {
        Self::from_terms(
            self.terms()
                .map(|(w, c)| c.checked_neg().map(|c| (w.clone(), c)).ok_or(FoxError::Overflow))
                .collect::<Result<Vec<_>, _>>()?,
        )
    }

    /// `u * self`.
    pub fn left_mul_word(&self, u: &Word) -> Self {
        GroupRingElement {
            terms: self.terms.iter().map(|(w, &c)| (u.mul(w), c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self, FoxError> {
        let mut out = Self::zero();
        for (a, ca) in self.terms() {
            for (b, cb) in other.terms() {
                out.add_term(a.mul(b), ca.checked_mul(cb).ok_or(FoxError::Overflow)?)?;
            }
        }
        Ok(out)
    }

    /// Image under `F2 -> Z^2`: each word becomes `X^k Y^l`.
    pub fn abelianize(&self) -> Result<LaurentPoly, FoxError> {
        let mut out = LaurentPoly::zero();
        for (w, c) in self.terms() {
            if !w.is_rank2() {
                return Err(FoxError::NotRank2(w.to_string()));
            }
            let (k, l) = w.exponent_sums();
            out.add_term(k, l, c)?;
        }
        Ok(out)
    }
}

impl fmt::Display for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (n, (w, c)) in self.terms().enumerate() {
            let sign = if c < 0 { "-" } else { "+" };
            if n == 0 {
                if c < 0 {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            if c.abs() != 1 {
                write!(f, "{}*", c.unsigned_abs())?;
            }
            write!(f, "{w}")?;
        }
        Ok(())
    }
}

/// `∂w/∂g`, computed in one left-to-right pass: a letter `g` at a position
/// with prefix `p` contributes `+p`, a letter `g^-1` contributes `-p g^-1`.
pub fn fox_derivative(w: &Word, g: Generator) -> GroupRingElement {
    let mut out = GroupRingElement::zero();
    let mut prefix = Word::identity();
    for &l in w.letters() {
        let next = prefix.mul(&Word::letter(l));
        if l.generator == g {
            let res = if l.inverse {
                out.add_term(next.clone(), -1)
            } else {
                out.add_term(prefix.clone(), 1)
            };
            res.expect("word length bounds the coefficients");
        }
        prefix = next;
    }
    out
}

pub fn abelianize(e: &GroupRingElement) -> Result<LaurentPoly, FoxError> {
    e.abelianize()
}

/// The boundary `C2 -> C1` of the presentation complex: a `2 x m` matrix
/// with rows indexed by `x`, `y` and columns by relators.
pub fn boundary_d2(p: &Presentation) -> Result<LaurentMatrix, FoxError> {
    if p.generator_count() != 2 {
        return Err(FoxError::WrongRank(p.generator_count()));
    }
    let m = p.relators().len();
    let mut d = LaurentMatrix::zeros(2, m.max(1));
    if m == 0 {
        return Ok(d);
    }
    for (j, r) in p.relators().iter().enumerate() {
        for (i, g) in [Generator::X, Generator::Y].into_iter().enumerate() {
            d.set(i, j, fox_derivative(r, g).abelianize()?);
        }
    }
    Ok(d)
}

/// Fox's fundamental identity after abelianization:
/// `∂w/∂x (X - 1) + ∂w/∂y (Y - 1) = X^k Y^l - 1`.
pub fn fundamental_identity_check(w: &Word) -> bool {
    let check = || -> Result<bool, FoxError> {
        let dx = fox_derivative(w, Generator::X).abelianize()?;
        let dy = fox_derivative(w, Generator::Y).abelianize()?;
        let xm1 = LaurentPoly::monomial(1, 0, 1).checked_sub(&LaurentPoly::one())?;
        let ym1 = LaurentPoly::monomial(0, 1, 1).checked_sub(&LaurentPoly::one())?;
        let lhs = dx.checked_mul(&xm1)?.checked_add(&dy.checked_mul(&ym1)?)?;
        let (k, l) = w.exponent_sums();
        let rhs = LaurentPoly::monomial(k, l, 1).checked_sub(&LaurentPoly::one())?;
        Ok(lhs == rhs)
    };
    check().unwrap_or(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::parse_laurent;
    use crate::words::parse_word;

    fn w(s: &str) -> Word {
        parse_word(s).unwrap()
    }

    fn p(s: &str) -> LaurentPoly {
        parse_laurent(s).unwrap()
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(fox_derivative(&w("x"), Generator::X), GroupRingElement::one());
        assert!(fox_derivative(&w("x"), Generator::Y).is_zero());
        assert_eq!(
            fox_derivative(&w("x^-1"), Generator::X),
            GroupRingElement::from_terms([(w("x^-1"), -1)]).unwrap()
        );
        let c = w("[x,y]");
        let dx = fox_derivative(&c, Generator::X);
        assert_eq!(
            dx,
            GroupRingElement::from_terms([(Word::identity(), 1), (w("xyx^-1"), -1)]).unwrap()
        );
        assert_eq!(dx.abelianize().unwrap(), p("1 - Y"));
        let dy = fox_derivative(&c, Generator::Y);
        assert_eq!(
            dy,
            GroupRingElement::from_terms([(w("x"), 1), (c.clone(), -1)]).unwrap()
        );
        assert_eq!(dy.abelianize().unwrap(), p("X - 1"));
    }

    #[test]
    fn abelianize_examples() {
        let e = GroupRingElement::from_terms([(Word::identity(), 1), (w("xyx^-1"), -1)]).unwrap();
        assert_eq!(abelianize(&e).unwrap(), p("1 - Y"));
        let e = GroupRingElement::from_terms([(Word::identity(), 3)]).unwrap();
        assert_eq!(abelianize(&e).unwrap(), p("3"));
        let e = GroupRingElement::from_terms([(w("x"), 1), (w("[x,y]x"), -1)]).unwrap();
        assert!(abelianize(&e).unwrap().is_zero());
        let e = GroupRingElement::from_word(w("z"));
        assert!(matches!(abelianize(&e), Err(FoxError::NotRank2(_))));
    }

    #[test]
    fn boundary_matrices() {
        let p0 = Presentation::new(2, vec![w("[x,y]"), Word::identity()]).unwrap();
        let d = boundary_d2(&p0).unwrap();
        assert_eq!(d, "1 - Y, 0; X - 1, 0".parse().unwrap());

        let q = Presentation::new(
            2,
            vec![w("[x,[x,y^-1]]^2 y [y^-1,x] y^-1"), w("[x,[[y^-1,x],x]]")],
        )
        .unwrap();
        let expected: LaurentMatrix = "(1-Y)*(1-2*(X-1)*Y^-1), (X-1)^2*(1-Y^-1); \
             (X-1)*(1-2*(X-1)*Y^-1), -(X-1)^3*Y^-1"
            .parse()
            .unwrap();
        assert_eq!(boundary_d2(&q).unwrap(), expected);

        let single = Presentation::new(2, vec![w("x")]).unwrap();
        assert_eq!(boundary_d2(&single).unwrap(), "1; 0".parse().unwrap());

        let rank3 = Presentation::new(3, vec![w("z")]).unwrap();
        assert_eq!(boundary_d2(&rank3), Err(FoxError::WrongRank(3)));
    }

    #[test]
    fn fundamental_identity() {
        assert!(fundamental_identity_check(&Word::identity()));
        assert!(fundamental_identity_check(&w("x^3 y^-2 x y")));
        assert!(fundamental_identity_check(&w("[x,[x,y^-1]]^2 y [y^-1,x] y^-1")));
    }

    #[test]
    fn group_ring_arithmetic() {
        let a = GroupRingElement::from_terms([(w("x"), 2), (w("y"), -1)]).unwrap();
        let b = GroupRingElement::from_terms([(w("x^-1"), 1)]).unwrap();
        let ab = a.mul(&b).unwrap();
        assert_eq!(
            ab,
            GroupRingElement::from_terms([(Word::identity(), 2), (w("yx^-1"), -1)]).unwrap()
        );
        assert!(a.add(&a.neg().unwrap()).unwrap().is_zero());
        assert_eq!(a.to_string(), "2*x - y");
    }
}
