//! Witnesses for membership in the normal closure of a set of relators.
//!
//! A [`Certificate`] is a list of steps `(u, j, ε)` and stands for the
//! product `Π u · r_j^ε · u^-1`. Checking one is a single free reduction.
//!
//! File format, one step per line:
//!
//! ```text
//! # comment
//! + 1 y^-1x      # sign, 1-based relator index, conjugator
//! - 2 1          # `1` is the empty conjugator
//! ```

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::exec::{self, Execution};
use crate::laurent::{LaurentError, LaurentPoly};
use crate::presentations::Presentation;
use crate::winding::{winding_invariant, WindingError};
use crate::words::{parse_word, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertificateError {
    #[error("step {step}: relator index {index} out of range 1..={count}")]
    BadIndex { step: usize, index: usize, count: usize },
    #[error("presentation is not cocommutative")]
    NotCocommutative,
    #[error("target is not in the commutator subgroup")]
    TargetNotCommutator,
    #[error("relations do not chain: `{0}` vs `{1}`")]
    Mismatch(String, String),
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error(transparent)]
    Winding(#[from] WindingError),
    #[error(transparent)]
    Laurent(#[from] LaurentError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Step {
    pub conjugator: Word,
    /// 1-based relator index.
    pub relator: usize,
    pub sign: Sign,
}

impl Step {
    pub fn new(conjugator: Word, relator: usize, sign: Sign) -> Self {
        Step {
            conjugator,
            relator,
            sign,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Certificate {
    pub steps: Vec<Step>,
}

impl Certificate {
    pub fn new(steps: Vec<Step>) -> Self {
        Certificate { steps }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    fn factor(step: &Step, p: &Presentation, n: usize) -> Result<Word, CertificateError> {
        let r = p
            .relators()
            .get(step.relator.wrapping_sub(1))
            .ok_or(CertificateError::BadIndex {
                step: n + 1,
                index: step.relator,
                count: p.relators().len(),
            })?;
        let r = if step.sign == Sign::Minus { r.inverse() } else { r.clone() };
        Ok(r.conjugate_by(&step.conjugator))
    }

    /// The freely reduced product the certificate stands for.
    pub fn expand(&self, p: &Presentation) -> Result<Word, CertificateError> {
        self.steps
            .iter()
            .enumerate()
            .try_fold(Word::identity(), |acc, (n, s)| Ok(acc.mul(&Self::factor(s, p, n)?)))
    }

    /// True iff the certificate expands to `target`, proving `target` lies in
    /// the normal closure of the relators. Bad indices verify as false.
    pub fn verify(&self, p: &Presentation, target: &Word) -> bool {
        self.expand(p).is_ok_and(|w| w == *target)
    }

    /// Necessary condition for validity on a cocommutative presentation:
    /// `P_target = Σ ε X^k Y^l P_{r_j}` with `(k, l)` the exponent sums of
    /// each conjugator.
    pub fn lambda_consistency(&self, p: &Presentation, target: &Word) -> Result<bool, CertificateError> {
        if p.generator_count() != 2 || !p.relators().iter().all(Word::is_commutator_element) {
            return Err(CertificateError::NotCocommutative);
        }
        if !target.is_rank2() || !target.is_commutator_element() {
            return Err(CertificateError::TargetNotCommutator);
        }
        let lambda = p
            .relators()
            .iter()
            .map(winding_invariant)
            .collect::<Result<Vec<_>, _>>()?;
        let mut acc = LaurentPoly::zero();
        for (n, s) in self.steps.iter().enumerate() {
            let pj = lambda.get(s.relator.wrapping_sub(1)).ok_or(CertificateError::BadIndex {
                step: n + 1,
                index: s.relator,
                count: lambda.len(),
            })?;
            let (k, l) = s.conjugator.exponent_sums();
            acc = acc.checked_add(&pj.shift(k, l).checked_scale(s.sign.as_i64())?)?;
        }
        Ok(acc == winding_invariant(target)?)
    }

    /// Certificate for the inverse product.
    pub fn inverse(&self) -> Certificate {
        Certificate::new(
            self.steps
                .iter()
                .rev()
                .map(|s| Step::new(s.conjugator.clone(), s.relator, s.sign.flip()))
                .collect(),
        )
    }

    /// Certificate for `g · expand(self) · g^-1`.
    pub fn conjugate_by(&self, g: &Word) -> Certificate {
        Certificate::new(
            self.steps
                .iter()
                .map(|s| Step::new(g.mul(&s.conjugator), s.relator, s.sign))
                .collect(),
        )
    }

    /// Certificate for `expand(self) · expand(other)`.
    pub fn concat(&self, other: &Certificate) -> Certificate {
        let mut steps = self.steps.clone();
        steps.extend(other.steps.iter().cloned());
        Certificate::new(steps)
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.steps {
            let sign = if s.sign == Sign::Plus { '+' } else { '-' };
            writeln!(f, "{sign} {} {}", s.relator, s.conjugator)?;
        }
        Ok(())
    }
}

impl FromStr for Certificate {
    type Err = CertificateError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut steps = Vec::new();
        for (n, raw) in s.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let syntax = |message: String| CertificateError::Syntax { line: n + 1, message };
            let mut parts = line.splitn(3, char::is_whitespace);
            let sign = match parts.next() {
                Some("+") => Sign::Plus,
                Some("-") => Sign::Minus,
                other => return Err(syntax(format!("expected `+` or `-`, found {other:?}"))),
            };
            let relator: usize = parts
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| syntax("expected relator index".into()))?;
            let conjugator = parse_word(parts.next().unwrap_or("").trim()).map_err(|e| syntax(e.to_string()))?;
            steps.push(Step::new(conjugator, relator, sign));
        }
        Ok(Certificate::new(steps))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CertificateBounds {
    pub max_steps: usize,
    pub max_conjugator_len: usize,
    pub execution: Execution,
}

impl Default for CertificateBounds {
    fn default() -> Self {
        CertificateBounds {
            max_steps: 3,
            max_conjugator_len: 2,
            execution: Execution::default(),
        }
    }
}

/// Whether `target` lies in the integer span of the exponent vectors of `vectors`.
fn in_integer_span(vectors: &[Vec<i64>], target: &[i64]) -> bool {
    let n = target.len();
    let mut rows: Vec<Vec<i128>> = vectors
        .iter()
        .map(|v| (0..n).map(|c| v.get(c).copied().unwrap_or(0) as i128).collect())
        .collect();
    // integer row echelon form
    let mut pivots = Vec::new();
    let mut top = 0;
    for col in 0..n {
        loop {
            let nonzero: Vec<usize> = (top..rows.len()).filter(|&r| rows[r][col] != 0).collect();
            if nonzero.len() <= 1 {
                if let Some(&r) = nonzero.first() {
                    rows.swap(top, r);
                    pivots.push((top, col));
                    top += 1;
                }
                break;
            }
            let min = *nonzero.iter().min_by_key(|&&r| rows[r][col].abs()).expect("nonempty");
            rows.swap(top, min);
            for r in top + 1..rows.len() {
                let q = rows[r][col] / rows[top][col];
                if q != 0 {
                    for c in 0..n {
                        rows[r][c] -= q * rows[top][c];
                    }
                }
            }
        }
    }
    let mut t: Vec<i128> = target.iter().map(|&e| e as i128).collect();
    for (r, col) in pivots {
        if t[col] % rows[r][col] != 0 {
            return false;
        }
        let q = t[col] / rows[r][col];
        for c in 0..n {
            t[c] -= q * rows[r][c];
        }
    }
    t.iter().all(|&e| e == 0)
}

/// Iterative-deepening search for a certificate of `target`, trying
/// conjugators in length-lex order. Result is deterministic for fixed bounds.
pub fn search_certificate(p: &Presentation, target: &Word, bounds: &CertificateBounds) -> Option<Certificate> {
    let rank = p.generator_count().max(target.rank());
    let vectors: Vec<Vec<i64>> = p.relators().iter().map(|r| r.exponent_vector(rank)).collect();
    if !in_integer_span(&vectors, &target.exponent_vector(rank)) {
        return None;
    }
    if target.is_empty() {
        return Some(Certificate::default());
    }

    // candidate factors in tie-break order, identity and duplicate factors dropped
    let mut steps: Vec<(Step, Word)> = Vec::new();
    for g in Word::enumerate_rank2(bounds.max_conjugator_len) {
        for j in 1..=p.relators().len() {
            for sign in [Sign::Plus, Sign::Minus] {
                let step = Step::new(g.clone(), j, sign);
                let f = Certificate::factor(&step, p, 0).expect("index in range");
                if !f.is_empty() && !steps.iter().any(|(_, w)| *w == f) {
                    steps.push((step, f));
                }
            }
        }
    }

    fn dfs(steps: &[(Step, Word)], acc: &Word, target: &Word, left: usize, path: &mut Vec<usize>) -> bool {
        if left == 0 {
            return acc == target;
        }
        for (k, (_, f)) in steps.iter().enumerate() {
            path.push(k);
            if dfs(steps, &acc.mul(f), target, left - 1, path) {
                return true;
            }
            path.pop();
        }
        false
    }

    let firsts: Vec<usize> = (0..steps.len()).collect();
    for depth in 1..=bounds.max_steps {
        let found = exec::find_map_first(bounds.execution, &firsts, |&k| {
            let mut path = vec![k];
            dfs(&steps, &steps[k].1, target, depth - 1, &mut path).then_some(path)
        });
        if let Some(path) = found {
            let cert = Certificate::new(path.into_iter().map(|k| steps[k].0.clone()).collect());
            debug_assert!(cert.verify(p, target));
            return Some(cert);
        }
    }
    None
}

/// A proved congruence `lhs ≡ rhs` modulo the normal closure, carried with
/// a certificate for `lhs · rhs^-1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Congruence {
    pub lhs: Word,
    pub rhs: Word,
    pub witness: Certificate,
}

impl Congruence {
    /// `r_j ≡ 1`.
    pub fn relator(p: &Presentation, index: usize) -> Result<Self, CertificateError> {
        let step = Step::new(Word::identity(), index, Sign::Plus);
        let lhs = Certificate::factor(&step, p, 0)?;
        Ok(Congruence {
            lhs,
            rhs: Word::identity(),
            witness: Certificate::new(vec![step]),
        })
    }

    /// `w ≡ 1` for `w` conjugate to some `r_j^±1`; `None` if no relator fits.
    pub fn conjugate_of_relator(p: &Presentation, w: &Word) -> Option<Self> {
        for (idx, r) in p.relators().iter().enumerate() {
            for (sign, base) in [(Sign::Plus, r.clone()), (Sign::Minus, r.inverse())] {
                if let Some(g) = base.conjugator_to(w) {
                    return Some(Congruence {
                        lhs: w.clone(),
                        rhs: Word::identity(),
                        witness: Certificate::new(vec![Step::new(g, idx + 1, sign)]),
                    });
                }
            }
        }
        None
    }

    pub fn reflexive(w: Word) -> Self {
        Congruence {
            lhs: w.clone(),
            rhs: w,
            witness: Certificate::default(),
        }
    }

    pub fn symm(self) -> Self {
        Congruence {
            witness: self.witness.inverse(),
            lhs: self.rhs,
            rhs: self.lhs,
        }
    }

    pub fn then(self, next: Congruence) -> Result<Self, CertificateError> {
        if self.rhs != next.lhs {
            return Err(CertificateError::Mismatch(self.rhs.to_string(), next.lhs.to_string()));
        }
        Ok(Congruence {
            lhs: self.lhs,
            rhs: next.rhs,
            witness: self.witness.concat(&next.witness),
        })
    }

    /// `prefix · lhs · suffix ≡ prefix · rhs · suffix`.
    pub fn wrap(&self, prefix: &Word, suffix: &Word) -> Self {
        Congruence {
            lhs: prefix.mul(&self.lhs).mul(suffix),
            rhs: prefix.mul(&self.rhs).mul(suffix),
            witness: self.witness.conjugate_by(prefix),
        }
    }

    pub fn check(&self, p: &Presentation) -> bool {
        self.witness.verify(p, &self.lhs.mul(&self.rhs.inverse()))
    }
}
