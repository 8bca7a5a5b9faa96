//! Exact arithmetic in `Z[X, X^-1, Y, Y^-1]`.
//!
//! A [`LaurentPoly`] is a sparse map from exponent pairs to nonzero `i64`
//! coefficients. Arithmetic is checked: the `checked_*` methods report
//! overflow as [`LaurentError::Overflow`], and the operator impls panic with
//! the same message instead of wrapping.
//!
//! Terms print in ascending `(j, i)` order, i.e. row by row from the bottom
//! of the winding grid: `2*Y^-1 - 2*X*Y^-1 + 1`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LaurentError {
    #[error("arithmetic overflow in Laurent ring")]
    Overflow,
    #[error("cannot evaluate at a zero base")]
    ZeroBase,
    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },
}

/// Exponent pair keyed so that the derived order is `(j, i)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct Key {
    j: i64,
    i: i64,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<Key, i64>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 0, 1)
    }

    pub fn constant(c: i64) -> Self {
        Self::monomial(0, 0, c)
    }

    /// `c * X^i * Y^j`.
    pub fn monomial(i: i64, j: i64, c: i64) -> Self {
        let mut terms = BTreeMap::new();
        if c != 0 {
            terms.insert(Key { j, i }, c);
        }
        LaurentPoly { terms }
    }

    pub fn x() -> Self {
        Self::monomial(1, 0, 1)
    }

    pub fn y() -> Self {
        Self::monomial(0, 1, 1)
    }

    /// Builds a polynomial from `((i, j), c)` pairs, combining like terms.
    pub fn from_terms<I: IntoIterator<Item = ((i64, i64), i64)>>(
        terms: I,
    ) -> Result<Self, LaurentError> {
        let mut p = LaurentPoly::zero();
        for ((i, j), c) in terms {
            p.add_term(i, j, c)?;
        }
        Ok(p)
    }

    /// Adds `c * X^i * Y^j` in place.
    pub fn add_term(&mut self, i: i64, j: i64, c: i64) -> Result<(), LaurentError> {
        if c == 0 {
            return Ok(());
        }
        let key = Key { j, i };
        let cur = self.terms.get(&key).copied().unwrap_or(0);
        let next = cur.checked_add(c).ok_or(LaurentError::Overflow)?;
        if next == 0 {
            self.terms.remove(&key);
        } else {
            self.terms.insert(key, next);
        }
        Ok(())
    }

    /// Terms as `((i, j), c)` in canonical `(j, i)` order.
    pub fn terms(&self) -> impl Iterator<Item = ((i64, i64), i64)> + '_ {
        self.terms.iter().map(|(k, &c)| ((k.i, k.j), c))
    }

    pub fn coefficient(&self, i: i64, j: i64) -> i64 {
        self.terms.get(&Key { j, i }).copied().unwrap_or(0)
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        *self == Self::one()
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, LaurentError> {
        let mut out = self.clone();
        for ((i, j), c) in other.terms() {
            out.add_term(i, j, c)?;
        }
        Ok(out)
    }

    pub fn checked_neg(&self) -> Result<Self, LaurentError> {
        let mut terms = BTreeMap::new();
        for (k, &c) in &self.terms {
            terms.insert(*k, c.checked_neg().ok_or(LaurentError::Overflow)?);
        }
        Ok(LaurentPoly { terms })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, LaurentError> {
        self.checked_add(&other.checked_neg()?)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, LaurentError> {
        let mut out = LaurentPoly::zero();
        for ((i1, j1), c1) in self.terms() {
            for ((i2, j2), c2) in other.terms() {
                let c = c1.checked_mul(c2).ok_or(LaurentError::Overflow)?;
                let i = i1.checked_add(i2).ok_or(LaurentError::Overflow)?;
                let j = j1.checked_add(j2).ok_or(LaurentError::Overflow)?;
                out.add_term(i, j, c)?;
            }
        }
        Ok(out)
    }

    pub fn checked_scale(&self, c: i64) -> Result<Self, LaurentError> {
        self.checked_mul(&LaurentPoly::constant(c))
    }

    /// Multiplication by `X^i * Y^j`.
    pub fn shift(&self, i: i64, j: i64) -> Self {
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .map(|(k, &c)| (Key { j: k.j + j, i: k.i + i }, c))
                .collect(),
        }
    }

    /// Units of the ring are exactly the signed monomials `±X^i Y^j`.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms.values().all(|c| c.abs() == 1)
    }

    pub fn unit_inverse(&self) -> Option<Self> {
        if !self.is_unit() {
            return None;
        }
        let ((i, j), c) = self.terms().next()?;
        Some(LaurentPoly::monomial(-i, -j, c))
    }

    /// Integer power; negative exponents are allowed for units only.
    pub fn checked_pow(&self, n: i64) -> Result<Option<Self>, LaurentError> {
        let base = if n < 0 {
            match self.unit_inverse() {
                Some(inv) => inv,
                None => return Ok(None),
            }
        } else {
            self.clone()
        };
        let mut out = LaurentPoly::one();
        for _ in 0..n.unsigned_abs() {
            out = out.checked_mul(&base)?;
        }
        Ok(Some(out))
    }

    /// Ring endomorphism induced by `X -> X^a Y^c`, `Y -> X^b Y^d` where
    /// `x_image = (a, c)` and `y_image = (b, d)`.
    pub fn substitute_monomials(
        &self,
        x_image: (i64, i64),
        y_image: (i64, i64),
    ) -> Result<Self, LaurentError> {
        let mut out = LaurentPoly::zero();
        for ((i, j), c) in self.terms() {
            let ni = i
                .checked_mul(x_image.0)
                .zip(j.checked_mul(y_image.0))
                .and_then(|(a, b)| a.checked_add(b))
                .ok_or(LaurentError::Overflow)?;
            let nj = i
                .checked_mul(x_image.1)
                .zip(j.checked_mul(y_image.1))
                .and_then(|(a, b)| a.checked_add(b))
                .ok_or(LaurentError::Overflow)?;
            out.add_term(ni, nj, c)?;
        }
        Ok(out)
    }

    /// Exact evaluation at nonzero rationals.
    pub fn evaluate(&self, x0: &BigRational, y0: &BigRational) -> Result<BigRational, LaurentError> {
        if x0.is_zero() || y0.is_zero() {
            return Err(LaurentError::ZeroBase);
        }
        let mut total = BigRational::zero();
        for ((i, j), c) in self.terms() {
            let term = BigRational::from_integer(BigInt::from(c)) * rational_pow(x0, i) * rational_pow(y0, j);
            total += term;
        }
        Ok(total)
    }

    /// Sum of all coefficients, i.e. the value at `X = Y = 1`.
    pub fn coefficient_sum(&self) -> i64 {
        self.terms.values().sum()
    }

    /// `q_k` with `(X - 1) * q_k = X^k - 1`: `1 + X + ... + X^(k-1)` for
    /// `k >= 0` and `-(X^k + ... + X^-1)` for `k < 0`.
    pub fn geometric_column(k: i64) -> Self {
        let mut p = LaurentPoly::zero();
        if k >= 0 {
            for i in 0..k {
                p.terms.insert(Key { j: 0, i }, 1);
            }
        } else {
            for i in k..0 {
                p.terms.insert(Key { j: 0, i }, -1);
            }
        }
        p
    }
}

fn rational_pow(base: &BigRational, e: i64) -> BigRational {
    let mut out = BigRational::one();
    let b = if e < 0 { base.recip() } else { base.clone() };
    for _ in 0..e.unsigned_abs() {
        out *= &b;
    }
    out
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: &LaurentPoly) -> LaurentPoly {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $trait<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: &LaurentPoly) -> LaurentPoly {
                (&self).$method(rhs)
            }
        }
        impl $trait<LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.checked_neg().unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for ((i, j), c) in rhs.terms() {
            self.add_term(i, j, c).unwrap_or_else(|e| panic!("{e}"));
        }
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        LaurentPoly::constant(c)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (n, ((i, j), c)) in self.terms().enumerate() {
            let mag = c.unsigned_abs();
            match (n, c < 0) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mut factors = Vec::new();
            if mag != 1 || (i == 0 && j == 0) {
                factors.push(mag.to_string());
            }
            match i {
                0 => {}
                1 => factors.push("X".into()),
                _ => factors.push(format!("X^{i}")),
            }
            match j {
                0 => {}
                1 => factors.push("Y".into()),
                _ => factors.push(format!("Y^{j}")),
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

impl FromStr for LaurentPoly {
    type Err = LaurentError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_laurent(s)
    }
}

/// Parses the printed form, plus parenthesised products and powers such as
/// `1 - 2*(X-1)*Y^-1` or `-(X-1)^2*Y^-1`.
pub fn parse_laurent(text: &str) -> Result<LaurentPoly, LaurentError> {
    let mut p = ExprParser {
        src: text.as_bytes(),
        pos: 0,
    };
    let v = p.expr()?;
    if p.peek().is_some() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(v)
}

struct ExprParser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl ExprParser<'_> {
    fn error(&self, message: &str) -> LaurentError {
        LaurentError::Parse {
            position: self.pos,
            message: message.into(),
        }
    }

    fn peek(&mut self) -> Option<u8> {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<LaurentPoly, LaurentError> {
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                self.term()?.checked_neg()?
            }
            Some(b'+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc.checked_add(&self.term()?)?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc.checked_sub(&self.term()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<LaurentPoly, LaurentError> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = acc.checked_mul(&self.power()?)?;
                }
                // juxtaposition, e.g. `2X` or `(X-1)(Y-1)`
                Some(b'X' | b'Y' | b'(') => {
                    acc = acc.checked_mul(&self.power()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<LaurentPoly, LaurentError> {
        let base = self.primary()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        let braced = self.peek() == Some(b'{');
        if braced {
            self.pos += 1;
        }
        let at = self.pos;
        let n = self.integer(true)?;
        if braced {
            if self.peek() != Some(b'}') {
                return Err(self.error("expected `}`"));
            }
            self.pos += 1;
        }
        base.checked_pow(n)?.ok_or(LaurentError::Parse {
            position: at,
            message: "negative power of a non-unit".into(),
        })
    }

    fn integer(&mut self, allow_sign: bool) -> Result<i64, LaurentError> {
        let mut neg = false;
        if allow_sign && self.peek() == Some(b'-') {
            neg = true;
            self.pos += 1;
        }
        self.peek();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected integer"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        let n: i64 = s.parse().map_err(|_| LaurentError::Overflow)?;
        Ok(if neg { -n } else { n })
    }

    fn primary(&mut self) -> Result<LaurentPoly, LaurentError> {
        match self.peek() {
            Some(b'X') => {
                self.pos += 1;
                Ok(LaurentPoly::x())
            }
            Some(b'Y') => {
                self.pos += 1;
                Ok(LaurentPoly::y())
            }
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => Ok(LaurentPoly::constant(self.integer(false)?)),
            Some(_) => Err(self.error("unexpected character")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

/// Rational from an integer ratio; convenience for callers of `evaluate`.
pub fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}
