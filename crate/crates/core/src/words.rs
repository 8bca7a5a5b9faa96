//! Freely reduced words in a free group, with `x`, `y` as the first two
//! generators and extra generators (`z`, `z3`, `z4`, ...) available for
//! stabilization moves.
//!
//! Words are always stored freely reduced. The text grammar accepts the
//! usual commutator notation, `[u,v] = u v u^-1 v^-1`:
//!
//! ```text
//! word    := term*
//! term    := atom ("^" integer)?
//! atom    := "x" | "y" | "z" digits? | "1" | "[" word "," word "]" | "(" word ")"
//! integer := "-"? digit+  |  "{" "-"? digit+ "}"
//! ```

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("word `{0}` uses generators other than x and y")]
    NotRank2(String),
}

/// Index of a free generator; `x` is 0 and `y` is 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Generator(pub u8);

impl Generator {
    pub const X: Generator = Generator(0);
    pub const Y: Generator = Generator(1);

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            0 => f.write_str("x"),
            1 => f.write_str("y"),
            2 => f.write_str("z"),
            n => write!(f, "z{n}"),
        }
    }
}

/// A generator or its inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub generator: Generator,
    pub inverse: bool,
}

impl Letter {
    pub const X: Letter = Letter::new(Generator::X, false);
    pub const X_INV: Letter = Letter::new(Generator::X, true);
    pub const Y: Letter = Letter::new(Generator::Y, false);
    pub const Y_INV: Letter = Letter::new(Generator::Y, true);

    pub const fn new(generator: Generator, inverse: bool) -> Self {
        Letter { generator, inverse }
    }

    /// The exponent, +1 or -1.
    pub fn sign(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    pub fn inv(self) -> Letter {
        Letter::new(self.generator, !self.inverse)
    }

    fn cancels(self, other: Letter) -> bool {
        self.generator == other.generator && self.inverse != other.inverse
    }

    /// The four letters of the rank-2 alphabet in enumeration order.
    pub fn rank2_alphabet() -> [Letter; 4] {
        [Letter::X, Letter::X_INV, Letter::Y, Letter::Y_INV]
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inverse {
            write!(f, "{}^-1", self.generator)
        } else {
            write!(f, "{}", self.generator)
        }
    }
}

/// A freely reduced word. The empty word is the identity.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<Letter>);

/// The lattice path traced by a rank-2 word, starting at the origin.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathTrace {
    pub points: Vec<(i64, i64)>,
}

impl PathTrace {
    pub fn end(&self) -> (i64, i64) {
        *self.points.last().expect("path has at least the origin")
    }

    pub fn is_closed(&self) -> bool {
        self.end() == (0, 0)
    }

    /// Bounding box `(min_x, max_x, min_y, max_y)` of the visited points.
    pub fn bounding_box(&self) -> (i64, i64, i64, i64) {
        let mut bb = (0, 0, 0, 0);
        for &(a, b) in &self.points {
            bb.0 = bb.0.min(a);
            bb.1 = bb.1.max(a);
            bb.2 = bb.2.min(b);
            bb.3 = bb.3.max(b);
        }
        bb
    }
}

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    pub fn letter(l: Letter) -> Self {
        Word(vec![l])
    }

    pub fn generator(g: Generator) -> Self {
        Word::letter(Letter::new(g, false))
    }

    pub fn x() -> Self {
        Word::letter(Letter::X)
    }

    pub fn y() -> Self {
        Word::letter(Letter::Y)
    }

    /// Builds a word from an arbitrary letter sequence, freely reducing it.
    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            push_reduced(&mut out, l);
        }
        Word(out)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Freely reduced product `self * other`.
    pub fn mul(&self, other: &Word) -> Word {
        let mut out = self.0.clone();
        out.reserve(other.len());
        for &l in &other.0 {
            push_reduced(&mut out, l);
        }
        Word(out)
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inv()).collect())
    }

    /// `g * self * g^-1`.
    pub fn conjugate_by(&self, g: &Word) -> Word {
        g.mul(self).mul(&g.inverse())
    }

    /// `[self, other] = self other self^-1 other^-1`.
    pub fn commutator(&self, other: &Word) -> Word {
        self.mul(other).mul(&self.inverse()).mul(&other.inverse())
    }

    pub fn pow(&self, n: i64) -> Word {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::identity();
        for _ in 0..n.unsigned_abs() {
            out = out.mul(&base);
        }
        out
    }

    /// Number of generators needed to write the word (largest index + 1).
    pub fn rank(&self) -> usize {
        self.0.iter().map(|l| l.generator.index() + 1).max().unwrap_or(0)
    }

    pub fn is_rank2(&self) -> bool {
        self.rank() <= 2
    }

    pub fn mentions(&self, g: Generator) -> bool {
        self.0.iter().any(|l| l.generator == g)
    }

    pub fn exponent_sum(&self, g: Generator) -> i64 {
        self.0
            .iter()
            .filter(|l| l.generator == g)
            .map(|l| l.sign())
            .sum()
    }

    /// Total exponents of `x` and `y`.
    pub fn exponent_sums(&self) -> (i64, i64) {
        (
            self.exponent_sum(Generator::X),
            self.exponent_sum(Generator::Y),
        )
    }

    /// Exponent sums for every generator below `rank`.
    pub fn exponent_vector(&self, rank: usize) -> Vec<i64> {
        let mut v = vec![0; rank.max(self.rank())];
        for l in &self.0 {
            v[l.generator.index()] += l.sign();
        }
        v
    }

    /// Membership in the commutator subgroup: every exponent sum vanishes.
    pub fn is_commutator_element(&self) -> bool {
        self.exponent_vector(0).iter().all(|&e| e == 0)
    }

    pub fn trace_path(&self) -> Result<PathTrace, WordError> {
        if !self.is_rank2() {
            return Err(WordError::NotRank2(self.to_string()));
        }
        let mut points = Vec::with_capacity(self.len() + 1);
        let mut pos = (0i64, 0i64);
        points.push(pos);
        for l in &self.0 {
            if l.generator == Generator::X {
                pos.0 += l.sign();
            } else {
                pos.1 += l.sign();
            }
            points.push(pos);
        }
        Ok(PathTrace { points })
    }

    /// Splits the word as `conjugator * core * conjugator^-1` with `core`
    /// cyclically reduced. Returns `(core, conjugator)`.
    pub fn cyclic_reduce(&self) -> (Word, Word) {
        let n = self.0.len();
        let mut k = 0;
        while 2 * k + 1 < n && self.0[k].cancels(self.0[n - 1 - k]) {
            k += 1;
        }
        (
            Word(self.0[k..n - k].to_vec()),
            Word(self.0[..k].to_vec()),
        )
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        match (self.0.first(), self.0.last()) {
            (Some(a), Some(b)) if self.0.len() > 1 => !a.cancels(*b),
            _ => true,
        }
    }

    /// The cyclic rotation starting at letter `k`.
    pub fn rotate(&self, k: usize) -> Word {
        if self.0.is_empty() {
            return self.clone();
        }
        let k = k % self.0.len();
        let mut v = self.0[k..].to_vec();
        v.extend_from_slice(&self.0[..k]);
        Word::from_letters(v)
    }

    /// Finds `g` with `g * self * g^-1 == other`, if the two are conjugate.
    pub fn conjugator_to(&self, other: &Word) -> Option<Word> {
        let (s, a) = self.cyclic_reduce();
        let (t, b) = other.cyclic_reduce();
        if s.len() != t.len() {
            return None;
        }
        if s.is_empty() {
            return Some(Word::identity());
        }
        // t = p^-1 s p where p is the prefix of s of length k.
        let n = s.len();
        (0..n).find_map(|k| {
            if s.0[k..].iter().chain(&s.0[..k]).eq(t.0.iter()) {
                let p = Word(s.0[..k].to_vec());
                Some(b.mul(&p.inverse()).mul(&a.inverse()))
            } else {
                None
            }
        })
    }

    pub fn is_conjugate_to(&self, other: &Word) -> bool {
        self.conjugator_to(other).is_some()
    }

    /// All reduced rank-2 words of length at most `max_len` in length-lex
    /// order (shorter first, then by the letter order `x < x^-1 < y < y^-1`).
    pub fn enumerate_rank2(max_len: usize) -> Vec<Word> {
        let mut out = vec![Word::identity()];
        let mut layer = vec![Word::identity()];
        for _ in 0..max_len {
            let mut next = Vec::with_capacity(layer.len() * 3);
            for w in &layer {
                for l in Letter::rank2_alphabet() {
                    if w.0.last().is_some_and(|last| last.cancels(l)) {
                        continue;
                    }
                    let mut v = w.0.clone();
                    v.push(l);
                    next.push(Word(v));
                }
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        out
    }
}

fn push_reduced(out: &mut Vec<Letter>, l: Letter) {
    if out.last().is_some_and(|last| last.cancels(l)) {
        out.pop();
    } else {
        out.push(l);
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for l in &self.0 {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_word(s)
    }
}

pub fn parse_word(text: &str) -> Result<Word, WordError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    let w = p.word()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error(format!("unexpected `{}`", p.src[p.pos] as char)));
    }
    Ok(w)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, message: impl Into<String>) -> WordError {
        WordError::Parse {
            position: self.pos,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<(), WordError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(format!("expected `{}`", c as char)))
        }
    }

    fn word(&mut self) -> Result<Word, WordError> {
        let mut acc = Word::identity();
        while let Some(c) = self.peek() {
            if matches!(c, b',' | b']' | b')') {
                break;
            }
            let t = self.term()?;
            acc = acc.mul(&t);
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Word, WordError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let n = self.exponent()?;
            Ok(base.pow(n))
        } else {
            Ok(base)
        }
    }

    fn exponent(&mut self) -> Result<i64, WordError> {
        if self.peek() == Some(b'{') {
            self.pos += 1;
            let n = self.integer()?;
            self.expect(b'}')?;
            Ok(n)
        } else {
            self.integer()
        }
    }

    fn integer(&mut self) -> Result<i64, WordError> {
        let start_tok = self.peek().map(|_| self.pos);
        let mut negative = false;
        if self.peek() == Some(b'-') {
            negative = true;
            self.pos += 1;
        }
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            if let Some(p) = start_tok {
                self.pos = p;
            }
            return Err(self.error("expected integer exponent"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        let n: i64 = digits.parse().map_err(|_| WordError::Parse {
            position: start,
            message: "exponent out of range".into(),
        })?;
        Ok(if negative { -n } else { n })
    }

    fn atom(&mut self) -> Result<Word, WordError> {
        match self.peek() {
            Some(b'x') => {
                self.pos += 1;
                Ok(Word::x())
            }
            Some(b'y') => {
                self.pos += 1;
                Ok(Word::y())
            }
            Some(b'z') => {
                self.pos += 1;
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                if start == self.pos {
                    return Ok(Word::generator(Generator(2)));
                }
                let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                match digits.parse::<u8>() {
                    Ok(n) if n >= 3 => Ok(Word::generator(Generator(n))),
                    _ => Err(WordError::Parse {
                        position: start,
                        message: format!("bad generator index `z{digits}`"),
                    }),
                }
            }
            Some(b'1') => {
                self.pos += 1;
                Ok(Word::identity())
            }
            Some(b'[') => {
                self.pos += 1;
                let u = self.word()?;
                self.expect(b',')?;
                let v = self.word()?;
                self.expect(b']')?;
                Ok(u.commutator(&v))
            }
            Some(b'(') => {
                self.pos += 1;
                let w = self.word()?;
                self.expect(b')')?;
                Ok(w)
            }
            Some(c) => Err(self.error(format!("unexpected `{}`", c as char))),
            None => Err(self.error("unexpected end of input")),
        }
    }
}
