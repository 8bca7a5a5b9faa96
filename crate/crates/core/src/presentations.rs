//! Presentations and the Q / Q* / Q** move systems.
//!
//! Relator indices in [`Move`] are 1-based, matching the script format:
//!
//! ```text
//! mult j i               r_j <- r_j r_i            (i != j)
//! invert j               r_j <- r_j^-1
//! conj j <word>          r_j <- g r_j g^-1
//! auto <wx> ; <wy>       every r -> phi(r), phi(x) = wx, phi(y) = wy
//! stab                   add generator g_n and relator g_n
//! destab                 inverse of stab
//! ```

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::exec::{self, Execution};
use crate::laurent::LaurentPoly;
use crate::matrices::{LaurentMatrix, MatrixError};
use crate::winding::{winding_invariant, WindingError};
use crate::words::{parse_word, Generator, Letter, Word, WordError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error("relator index {index} out of range 1..={count}")]
    IndexOutOfRange { index: usize, count: usize },
    #[error("mult needs two distinct relators, got {0} twice")]
    SameRelator(usize),
    #[error("word `{word}` uses a generator outside the {count} available")]
    ForeignGenerator { word: String, count: usize },
    #[error("`{0}` is not an automorphism of F(x, y)")]
    NotAutomorphism(String),
    #[error("automorphism moves need exactly two generators, got {0}")]
    AutomorphRank(usize),
    #[error("cannot destabilize: {0}")]
    IllegalDestabilize(String),
    #[error("presentation must have at least one generator")]
    NoGenerators,
    #[error("expected rank 2, got {0}")]
    WrongRank(usize),
    #[error("{0} has no action on the Λ vector")]
    NoLambdaAction(String),
    #[error("cannot normalize search result: {0}")]
    Normalization(String),
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Winding(#[from] WindingError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Presentation {
    generator_count: usize,
    relators: Vec<Word>,
}

impl Presentation {
    pub fn new(generator_count: usize, relators: Vec<Word>) -> Result<Self, PresentationError> {
        if generator_count == 0 {
            return Err(PresentationError::NoGenerators);
        }
        for r in &relators {
            check_generators(r, generator_count)?;
        }
        Ok(Presentation {
            generator_count,
            relators,
        })
    }

    /// Rank-2 presentation from word strings.
    pub fn rank2(relators: &[&str]) -> Result<Self, PresentationError> {
        let words = relators
            .iter()
            .map(|r| parse_word(r))
            .collect::<Result<Vec<_>, _>>()?;
        Presentation::new(2, words)
    }

    pub fn generator_count(&self) -> usize {
        self.generator_count
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn relator(&self, index: usize) -> Result<&Word, PresentationError> {
        self.check_index(index)?;
        Ok(&self.relators[index - 1])
    }

    fn check_index(&self, index: usize) -> Result<(), PresentationError> {
        if index == 0 || index > self.relators.len() {
            Err(PresentationError::IndexOutOfRange {
                index,
                count: self.relators.len(),
            })
        } else {
            Ok(())
        }
    }

    /// Every relator lies in the commutator subgroup of `F(x, y)`.
    pub fn is_cocommutative(&self) -> Result<bool, PresentationError> {
        if self.generator_count != 2 {
            return Err(PresentationError::WrongRank(self.generator_count));
        }
        Ok(self.relators.iter().all(Word::is_commutator_element))
    }

    /// Dedup key for search: relators freely and cyclically reduced, sorted.
    /// Equal keys imply Q-equivalence, not the converse.
    pub fn canonical_key(&self) -> Vec<Word> {
        let mut key: Vec<Word> = self.relators.iter().map(|r| r.cyclic_reduce().0).collect();
        key.sort();
        key
    }
}

fn check_generators(w: &Word, count: usize) -> Result<(), PresentationError> {
    if w.rank() > count {
        Err(PresentationError::ForeignGenerator {
            word: w.to_string(),
            count,
        })
    } else {
        Ok(())
    }
}

impl fmt::Display for Presentation {
    /// The line-oriented file format.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.generator_count)
            .map(|i| Generator(i as u8).to_string())
            .collect();
        writeln!(f, "generators: {}", names.join(" "))?;
        for r in &self.relators {
            writeln!(f, "relator: {r}")?;
        }
        Ok(())
    }
}

impl FromStr for Presentation {
    type Err = PresentationError;

    /// Parses `generators: x y` followed by `relator: <word>` lines; blank
    /// lines and `#` comments are skipped.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut generators: Option<usize> = None;
        let mut relators = Vec::new();
        for (n, raw) in s.lines().enumerate() {
            let line_no = n + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let syntax = |message: String| PresentationError::Syntax {
                line: line_no,
                message,
            };
            let (head, rest) = line
                .split_once(':')
                .ok_or_else(|| syntax("expected `generators:` or `relator:`".into()))?;
            match head.trim() {
                "generators" => {
                    if generators.is_some() {
                        return Err(syntax("duplicate generators line".into()));
                    }
                    let names: Vec<&str> = rest.split_whitespace().collect();
                    for (i, name) in names.iter().enumerate() {
                        let expected = Generator(i as u8).to_string();
                        if *name != expected {
                            return Err(syntax(format!(
                                "generator {} must be named `{expected}`, found `{name}`",
                                i + 1
                            )));
                        }
                    }
                    generators = Some(names.len());
                }
                "relator" => {
                    let w = parse_word(rest.trim()).map_err(|e| syntax(e.to_string()))?;
                    relators.push(w);
                }
                other => return Err(syntax(format!("unknown key `{other}`"))),
            }
        }
        let count = generators.ok_or(PresentationError::Syntax {
            line: 0,
            message: "missing `generators:` line".into(),
        })?;
        Presentation::new(count, relators)
    }
}

/// Endomorphism of `F(x, y)`, given by the images of `x` and `y`. Extra
/// generators are fixed.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Endomorphism {
    pub image_of_x: Word,
    pub image_of_y: Word,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NielsenKind {
    /// x <-> y
    Swap,
    /// x -> x^-1
    InvertX,
    /// x -> xy
    Shear,
}

impl Endomorphism {
    pub fn new(image_of_x: Word, image_of_y: Word) -> Self {
        Endomorphism {
            image_of_x,
            image_of_y,
        }
    }

    pub fn identity() -> Self {
        Self::new(Word::x(), Word::y())
    }

    pub fn nielsen(kind: NielsenKind) -> Self {
        match kind {
            NielsenKind::Swap => Self::new(Word::y(), Word::x()),
            NielsenKind::InvertX => Self::new(Word::letter(Letter::X_INV), Word::y()),
            NielsenKind::Shear => Self::new(Word::from_letters([Letter::X, Letter::Y]), Word::y()),
        }
    }

    /// Substitutes the images and reduces.
    pub fn apply(&self, w: &Word) -> Word {
        let mut out = Word::identity();
        for &l in w.letters() {
            let image = match l.generator {
                Generator::X => self.image_of_x.clone(),
                Generator::Y => self.image_of_y.clone(),
                _ => Word::generator(l.generator),
            };
            out = out.mul(&if l.inverse { image.inverse() } else { image });
        }
        out
    }

    /// `(self ∘ other)(g) = self(other(g))`.
    pub fn compose(&self, other: &Endomorphism) -> Endomorphism {
        Endomorphism::new(self.apply(&other.image_of_x), self.apply(&other.image_of_y))
    }

    /// Magnus' criterion: an endomorphism of `F2` is an automorphism iff it
    /// maps `[x,y]` to a conjugate of `[x,y]^±1`.
    pub fn is_automorphism(&self) -> bool {
        if !self.image_of_x.is_rank2() || !self.image_of_y.is_rank2() {
            return false;
        }
        let c = Word::x().commutator(&Word::y());
        let image = self.apply(&c);
        image.is_conjugate_to(&c) || image.is_conjugate_to(&c.inverse())
    }

    /// Exponent sums of the images of `x` and `y`, i.e. the induced map on
    /// `Z^2`.
    pub fn abelianization(&self) -> ((i64, i64), (i64, i64)) {
        (self.image_of_x.exponent_sums(), self.image_of_y.exponent_sums())
    }
}

impl fmt::Display for Endomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ; {}", self.image_of_x, self.image_of_y)
    }
}

pub fn apply_endomorphism(phi: &Endomorphism, w: &Word) -> Word {
    phi.apply(w)
}

pub fn is_automorphism_rank2(phi: &Endomorphism) -> bool {
    phi.is_automorphism()
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Move {
    /// `r_j <- r_j r_i`
    Mult { j: usize, i: usize },
    /// `r_j <- r_j^-1`
    Invert { j: usize },
    /// `r_j <- g r_j g^-1`
    Conjugate { j: usize, g: Word },
    Automorph(Endomorphism),
    Stabilize,
    Destabilize,
}

impl Move {
    pub fn is_q_move(&self) -> bool {
        matches!(self, Move::Mult { .. } | Move::Invert { .. } | Move::Conjugate { .. })
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Move::Mult { j, i } => write!(f, "mult {j} {i}"),
            Move::Invert { j } => write!(f, "invert {j}"),
            Move::Conjugate { j, g } => write!(f, "conj {j} {g}"),
            Move::Automorph(phi) => write!(f, "auto {phi}"),
            Move::Stabilize => f.write_str("stab"),
            Move::Destabilize => f.write_str("destab"),
        }
    }
}

impl FromStr for Move {
    type Err = PresentationError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_move(s, 0)
    }
}

fn parse_move(line: &str, line_no: usize) -> Result<Move, PresentationError> {
    let syntax = |message: String| PresentationError::Syntax {
        line: line_no,
        message,
    };
    let line = line.trim();
    let (cmd, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
    let rest = rest.trim();
    let index = |t: Option<&str>| -> Result<usize, PresentationError> {
        t.and_then(|t| t.parse().ok())
            .ok_or_else(|| syntax(format!("expected relator index in `{line}`")))
    };
    let word = |t: &str| parse_word(t).map_err(|e| syntax(e.to_string()));
    match cmd {
        "mult" => {
            let mut it = rest.split_whitespace();
            let m = Move::Mult {
                j: index(it.next())?,
                i: index(it.next())?,
            };
            if it.next().is_some() {
                return Err(syntax("trailing tokens after `mult j i`".into()));
            }
            Ok(m)
        }
        "invert" => Ok(Move::Invert {
            j: index(Some(rest))?,
        }),
        "conj" => {
            let (j, g) = rest.split_once(char::is_whitespace).unwrap_or((rest, ""));
            Ok(Move::Conjugate {
                j: index(Some(j))?,
                g: word(g)?,
            })
        }
        "auto" => {
            let (a, b) = rest
                .split_once(';')
                .ok_or_else(|| syntax("expected `auto <word> ; <word>`".into()))?;
            Ok(Move::Automorph(Endomorphism::new(word(a)?, word(b)?)))
        }
        "stab" if rest.is_empty() => Ok(Move::Stabilize),
        "destab" if rest.is_empty() => Ok(Move::Destabilize),
        _ => Err(syntax(format!("unknown move `{line}`"))),
    }
}

/// Parses a move script, one move per line; blank lines and `#` comments
/// are skipped.
pub fn parse_script(text: &str) -> Result<Vec<Move>, PresentationError> {
    text.lines()
        .enumerate()
        .filter_map(|(n, raw)| {
            let line = raw.split('#').next().unwrap_or("").trim();
            (!line.is_empty()).then(|| parse_move(line, n + 1))
        })
        .collect()
}

pub fn format_script(script: &[Move]) -> String {
    script.iter().map(|m| format!("{m}\n")).collect()
}

pub fn apply_move(p: &Presentation, m: &Move) -> Result<Presentation, PresentationError> {
    let mut relators = p.relators.clone();
    let mut generator_count = p.generator_count;
    match m {
        Move::Mult { j, i } => {
            p.check_index(*j)?;
            p.check_index(*i)?;
            if i == j {
                return Err(PresentationError::SameRelator(*j));
            }
            relators[j - 1] = relators[j - 1].mul(&p.relators[i - 1]);
        }
        Move::Invert { j } => {
            p.check_index(*j)?;
            relators[j - 1] = relators[j - 1].inverse();
        }
        Move::Conjugate { j, g } => {
            p.check_index(*j)?;
            check_generators(g, p.generator_count)?;
            relators[j - 1] = relators[j - 1].conjugate_by(g);
        }
        Move::Automorph(phi) => {
            if p.generator_count != 2 {
                return Err(PresentationError::AutomorphRank(p.generator_count));
            }
            if !phi.is_automorphism() {
                return Err(PresentationError::NotAutomorphism(phi.to_string()));
            }
            relators = relators.iter().map(|r| phi.apply(r)).collect();
        }
        Move::Stabilize => {
            if generator_count >= u8::MAX as usize {
                return Err(PresentationError::ForeignGenerator {
                    word: "stab".into(),
                    count: generator_count,
                });
            }
            relators.push(Word::generator(Generator(generator_count as u8)));
            generator_count += 1;
        }
        Move::Destabilize => {
            if generator_count <= 2 {
                return Err(PresentationError::IllegalDestabilize(
                    "no stabilization generator to remove".into(),
                ));
            }
            let last = Generator((generator_count - 1) as u8);
            let trivial = Word::generator(last);
            let holders: Vec<usize> = (0..relators.len())
                .filter(|&k| relators[k].mentions(last))
                .collect();
            match holders.as_slice() {
                [k] if relators[*k] == trivial => {
                    relators.remove(*k);
                }
                _ => {
                    return Err(PresentationError::IllegalDestabilize(format!(
                        "generator {last} must appear only as its own relator"
                    )))
                }
            }
            generator_count -= 1;
        }
    }
    Ok(Presentation {
        generator_count,
        relators,
    })
}

pub fn apply_script(p: &Presentation, script: &[Move]) -> Result<Presentation, PresentationError> {
    script.iter().try_fold(p.clone(), |acc, m| apply_move(&acc, m))
}

/// How a move transforms `Λ`: `Λ' = matrix · σ(Λ)` with `σ` the ring map
/// `X -> X^a Y^c`, `Y -> X^b Y^d` induced on `Z^2`. For Q-moves `σ` is the
/// identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LambdaAction {
    pub matrix: LaurentMatrix,
    pub substitution: ((i64, i64), (i64, i64)),
}

impl LambdaAction {
    pub const IDENTITY_SUBSTITUTION: ((i64, i64), (i64, i64)) = ((1, 0), (0, 1));

    pub fn is_linear(&self) -> bool {
        self.substitution == Self::IDENTITY_SUBSTITUTION
    }

    pub fn apply(&self, lambda: &[LaurentPoly]) -> Result<Vec<LaurentPoly>, PresentationError> {
        let (sx, sy) = self.substitution;
        let twisted = lambda
            .iter()
            .map(|p| p.substitute_monomials(sx, sy))
            .collect::<Result<Vec<_>, _>>()
            .map_err(MatrixError::from)?;
        Ok(self.matrix.apply(&twisted)?)
    }
}

pub fn move_lambda_action(m: &Move, size: usize) -> Result<LambdaAction, PresentationError> {
    let check = |k: usize| {
        if k == 0 || k > size {
            Err(PresentationError::IndexOutOfRange { index: k, count: size })
        } else {
            Ok(())
        }
    };
    let linear = |matrix| LambdaAction {
        matrix,
        substitution: LambdaAction::IDENTITY_SUBSTITUTION,
    };
    match m {
        Move::Mult { j, i } => {
            check(*j)?;
            check(*i)?;
            if i == j {
                return Err(PresentationError::SameRelator(*j));
            }
            let mut e = LaurentMatrix::identity(size);
            e.set(j - 1, i - 1, LaurentPoly::one());
            Ok(linear(e))
        }
        Move::Invert { j } => {
            check(*j)?;
            let mut d = LaurentMatrix::identity(size);
            d.set(j - 1, j - 1, LaurentPoly::constant(-1));
            Ok(linear(d))
        }
        Move::Conjugate { j, g } => {
            check(*j)?;
            if !g.is_rank2() {
                return Err(PresentationError::ForeignGenerator {
                    word: g.to_string(),
                    count: 2,
                });
            }
            let (k, l) = g.exponent_sums();
            let mut d = LaurentMatrix::identity(size);
            d.set(j - 1, j - 1, LaurentPoly::monomial(k, l, 1));
            Ok(linear(d))
        }
        Move::Automorph(phi) => {
            if !phi.is_automorphism() {
                return Err(PresentationError::NotAutomorphism(phi.to_string()));
            }
            let u = winding_invariant(&phi.apply(&Word::x().commutator(&Word::y())))?;
            Ok(LambdaAction {
                matrix: LaurentMatrix::identity(size).scale(&u)?,
                substitution: phi.abelianization(),
            })
        }
        Move::Stabilize | Move::Destabilize => Err(PresentationError::NoLambdaAction(m.to_string())),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBounds {
    pub max_moves: usize,
    pub max_conjugator_len: usize,
    pub max_relator_len: usize,
    /// Include the Nielsen automorphisms (Q* rather than Q search).
    pub automorphisms: bool,
    pub execution: Execution,
}

impl Default for SearchBounds {
    fn default() -> Self {
        SearchBounds {
            max_moves: 4,
            max_conjugator_len: 1,
            max_relator_len: 24,
            automorphisms: true,
            execution: Execution::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOutcome {
    /// Verified script taking the start exactly to the goal, if one was found.
    pub script: Option<Vec<Move>>,
    /// Distinct canonical states visited, the start included.
    pub states_visited: usize,
    /// Depth of the last fully expanded layer.
    pub depth_reached: usize,
}

/// The move alphabet explored from a rank-2 presentation with `m` relators,
/// in tie-break order.
pub fn search_moves(m: usize, bounds: &SearchBounds) -> Vec<Move> {
    let mut moves = Vec::new();
    for j in 1..=m {
        for i in 1..=m {
            if i != j {
                moves.push(Move::Mult { j, i });
            }
        }
    }
    moves.extend((1..=m).map(|j| Move::Invert { j }));
    let conjugators: Vec<Word> = Word::enumerate_rank2(bounds.max_conjugator_len)
        .into_iter()
        .skip(1)
        .collect();
    for j in 1..=m {
        for g in &conjugators {
            moves.push(Move::Conjugate { j, g: g.clone() });
        }
    }
    if bounds.automorphisms {
        let shear_inv = Endomorphism::new(Word::from_letters([Letter::X, Letter::Y_INV]), Word::y());
        for phi in [
            Endomorphism::nielsen(NielsenKind::Swap),
            Endomorphism::nielsen(NielsenKind::InvertX),
            Endomorphism::nielsen(NielsenKind::Shear),
            shear_inv,
        ] {
            moves.push(Move::Automorph(phi));
        }
    }
    moves
}

struct Node {
    presentation: Presentation,
    parent: usize,
    via: usize,
}

/// Breadth-first search over rank-2 presentations reachable from `start`,
/// deduplicating by [`Presentation::canonical_key`].
///
/// When a state with the goal's canonical key is reached, the script is
/// completed with relator swaps and conjugations that land exactly on
/// `goal`; those trailing moves are not counted against `max_moves`. The
/// returned script is re-applied and checked before it is reported.
pub fn bounded_search(
    start: &Presentation,
    goal: &Presentation,
    bounds: &SearchBounds,
) -> Result<SearchOutcome, PresentationError> {
    for p in [start, goal] {
        if p.generator_count() != 2 {
            return Err(PresentationError::WrongRank(p.generator_count()));
        }
    }
    if start.relators().len() != goal.relators().len() {
        return Ok(SearchOutcome {
            script: None,
            states_visited: 1,
            depth_reached: 0,
        });
    }
    let moves = search_moves(start.relators().len(), bounds);
    let goal_key = goal.canonical_key();

    let mut nodes = vec![Node {
        presentation: start.clone(),
        parent: usize::MAX,
        via: usize::MAX,
    }];
    let mut seen: HashSet<Vec<Word>> = HashSet::from([start.canonical_key()]);
    let finish = |nodes: &[Node], idx: usize| -> Result<Vec<Move>, PresentationError> {
        let mut script = Vec::new();
        let mut cur = idx;
        while nodes[cur].parent != usize::MAX {
            script.push(moves[nodes[cur].via].clone());
            cur = nodes[cur].parent;
        }
        script.reverse();
        let reached = &nodes[idx].presentation;
        script.extend(normalization_script(reached, goal)?);
        if apply_script(start, &script)? != *goal {
            return Err(PresentationError::Normalization("script does not reach the goal".into()));
        }
        Ok(script)
    };

    if start.canonical_key() == goal_key {
        return Ok(SearchOutcome {
            script: Some(finish(&nodes, 0)?),
            states_visited: 1,
            depth_reached: 0,
        });
    }

    let mut frontier: Vec<usize> = vec![0];
    for depth in 1..=bounds.max_moves {
        let expanded = exec::map(bounds.execution, &frontier, |&idx| {
            let parent = &nodes[idx].presentation;
            moves
                .iter()
                .enumerate()
                .filter_map(|(mi, m)| {
                    let child = apply_move(parent, m).ok()?;
                    if child.relators().iter().any(|r| r.len() > bounds.max_relator_len) {
                        return None;
                    }
                    let key = child.canonical_key();
                    Some((mi, child, key))
                })
                .collect::<Vec<_>>()
        });
        let mut next = Vec::new();
        for (&parent, children) in frontier.iter().zip(expanded) {
            for (mi, child, key) in children {
                if key == goal_key {
                    nodes.push(Node {
                        presentation: child,
                        parent,
                        via: mi,
                    });
                    let found = nodes.len() - 1;
                    return Ok(SearchOutcome {
                        script: Some(finish(&nodes, found)?),
                        states_visited: seen.len() + 1,
                        depth_reached: depth,
                    });
                }
                if seen.insert(key) {
                    nodes.push(Node {
                        presentation: child,
                        parent,
                        via: mi,
                    });
                    next.push(nodes.len() - 1);
                }
            }
        }
        if next.is_empty() {
            return Ok(SearchOutcome {
                script: None,
                states_visited: seen.len(),
                depth_reached: depth,
            });
        }
        frontier = next;
    }
    Ok(SearchOutcome {
        script: None,
        states_visited: seen.len(),
        depth_reached: bounds.max_moves,
    })
}

/// Moves exchanging relators `a` and `b` of `p` (both 1-based, distinct).
pub fn swap_script(p: &Presentation, a: usize, b: usize) -> Result<Vec<Move>, PresentationError> {
    let ra = p.relator(a)?.clone();
    let rb = p.relator(b)?.clone();
    if a == b {
        return Err(PresentationError::SameRelator(a));
    }
    // (ra, rb) -> (ra rb, rb) -> (ra rb, rb^-1) -> (ra rb, rb^-1 ra rb) -> (ra rb, ra)
    //          -> (ra rb, ra^-1) -> (ra rb ra^-1, ra^-1) -> (rb, ra^-1) -> (rb, ra)
    Ok(vec![
        Move::Mult { j: a, i: b },
        Move::Invert { j: b },
        Move::Mult { j: b, i: a },
        Move::Conjugate { j: b, g: rb },
        Move::Invert { j: b },
        Move::Mult { j: a, i: b },
        Move::Conjugate { j: a, g: ra.inverse() },
        Move::Invert { j: b },
    ])
}

/// Moves turning `from` into `to` when both have the same canonical key.
fn normalization_script(from: &Presentation, to: &Presentation) -> Result<Vec<Move>, PresentationError> {
    let m = from.relators().len();
    let mut script = Vec::new();
    let mut cur = from.clone();
    // selection sort of relators into the goal's order, matching by cyclic core
    for pos in 1..=m {
        let want = to.relators()[pos - 1].cyclic_reduce().0;
        let found = (pos..=m)
            .find(|&k| cur.relators()[k - 1].cyclic_reduce().0 == want)
            .ok_or_else(|| PresentationError::Normalization("canonical keys differ".into()))?;
        if found != pos {
            let swap = swap_script(&cur, pos, found)?;
            cur = apply_script(&cur, &swap)?;
            script.extend(swap);
        }
    }
    for pos in 1..=m {
        let r = &cur.relators()[pos - 1];
        let target = &to.relators()[pos - 1];
        if r != target {
            let g = r
                .conjugator_to(target)
                .ok_or_else(|| PresentationError::Normalization("relators not conjugate".into()))?;
            script.push(Move::Conjugate { j: pos, g });
        }
    }
    Ok(script)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::parse_laurent;
    use crate::winding::lambda_vector;

    fn w(s: &str) -> Word {
        parse_word(s).unwrap()
    }

    fn p0() -> Presentation {
        Presentation::rank2(&["[x,y]", "1"]).unwrap()
    }

    fn q() -> Presentation {
        Presentation::rank2(&["[x,[x,y^-1]]^2 y [y^-1,x] y^-1", "[x,[[y^-1,x],x]]"]).unwrap()
    }

    #[test]
    fn move_examples() {
        assert_eq!(
            apply_move(&p0(), &Move::Invert { j: 1 }).unwrap(),
            Presentation::rank2(&["[y,x]", "1"]).unwrap()
        );
        assert_eq!(
            apply_move(&p0(), &Move::Mult { j: 2, i: 1 }).unwrap(),
            Presentation::rank2(&["[x,y]", "[x,y]"]).unwrap()
        );
        let stab = apply_move(&p0(), &Move::Stabilize).unwrap();
        assert_eq!(stab, Presentation::new(3, vec![w("[x,y]"), Word::identity(), w("z")]).unwrap());
        assert_eq!(apply_move(&stab, &Move::Destabilize).unwrap(), p0());
    }

    #[test]
    fn move_errors() {
        assert!(matches!(
            apply_move(&p0(), &Move::Invert { j: 3 }),
            Err(PresentationError::IndexOutOfRange { index: 3, count: 2 })
        ));
        assert!(matches!(
            apply_move(&p0(), &Move::Mult { j: 1, i: 1 }),
            Err(PresentationError::SameRelator(1))
        ));
        let bad = Endomorphism::new(w("x^2"), w("y"));
        assert!(matches!(
            apply_move(&p0(), &Move::Automorph(bad)),
            Err(PresentationError::NotAutomorphism(_))
        ));
        assert!(matches!(
            apply_move(&p0(), &Move::Destabilize),
            Err(PresentationError::IllegalDestabilize(_))
        ));
        let stab = apply_move(&p0(), &Move::Stabilize).unwrap();
        let tangled = apply_move(&stab, &Move::Mult { j: 1, i: 3 }).unwrap();
        assert!(matches!(
            apply_move(&tangled, &Move::Destabilize),
            Err(PresentationError::IllegalDestabilize(_))
        ));
        assert!(matches!(
            apply_move(&stab, &Move::Automorph(Endomorphism::identity())),
            Err(PresentationError::AutomorphRank(3))
        ));
        assert!(matches!(
            apply_move(&p0(), &Move::Conjugate { j: 1, g: w("z") }),
            Err(PresentationError::ForeignGenerator { .. })
        ));
    }

    #[test]
    fn endomorphisms() {
        let id = Endomorphism::identity();
        let c = w("[x,y]");
        assert_eq!(id.apply(&c), c);
        let swap = Endomorphism::nielsen(NielsenKind::Swap);
        assert_eq!(swap.apply(&c), w("[y,x]"));
        let shear = Endomorphism::nielsen(NielsenKind::Shear);
        assert_eq!(shear.apply(&w("x")), w("xy"));
        assert_eq!(Endomorphism::nielsen(NielsenKind::InvertX), Endomorphism::new(w("x^-1"), w("y")));
    }

    #[test]
    fn magnus_test() {
        assert!(Endomorphism::identity().is_automorphism());
        assert!(Endomorphism::new(w("xy"), w("y")).is_automorphism());
        assert!(!Endomorphism::new(w("x^2"), w("y")).is_automorphism());
        assert!(!Endomorphism::new(w("x"), w("x")).is_automorphism());
        assert!(!Endomorphism::new(w("xz"), w("y")).is_automorphism());
        for kind in [NielsenKind::Swap, NielsenKind::InvertX, NielsenKind::Shear] {
            assert!(is_automorphism_rank2(&Endomorphism::nielsen(kind)));
        }
        // [x^2, y] is already cyclically reduced
        assert_eq!(
            Endomorphism::new(w("x^2"), w("y")).apply(&w("[x,y]")).cyclic_reduce().0.len(),
            6
        );
    }

    #[test]
    fn composition() {
        let id = Endomorphism::identity();
        let swap = Endomorphism::nielsen(NielsenKind::Swap);
        let shear = Endomorphism::nielsen(NielsenKind::Shear);
        let inv_x = Endomorphism::nielsen(NielsenKind::InvertX);
        assert_eq!(id.compose(&shear), shear);
        assert_eq!(swap.compose(&swap), id);
        assert_eq!(shear.compose(&inv_x).image_of_x, w("y^-1 x^-1"));
        let phi = shear.compose(&inv_x);
        assert_eq!(phi.apply(&w("x y")), shear.apply(&inv_x.apply(&w("xy"))));
    }

    #[test]
    fn cocommutativity() {
        assert!(p0().is_cocommutative().unwrap());
        assert!(q().is_cocommutative().unwrap());
        assert!(!Presentation::rank2(&["x"]).unwrap().is_cocommutative().unwrap());
        let stab = apply_move(&p0(), &Move::Stabilize).unwrap();
        assert_eq!(stab.is_cocommutative(), Err(PresentationError::WrongRank(3)));
    }

    #[test]
    fn lambda_actions() {
        let a = move_lambda_action(&Move::Invert { j: 1 }, 2).unwrap();
        assert_eq!(a.matrix, "-1, 0; 0, 1".parse().unwrap());
        let a = move_lambda_action(&Move::Conjugate { j: 2, g: w("xy^-1") }, 2).unwrap();
        assert_eq!(a.matrix, "1, 0; 0, X*Y^-1".parse().unwrap());
        let a = move_lambda_action(&Move::Mult { j: 2, i: 1 }, 2).unwrap();
        assert_eq!(a.matrix, "1, 0; 1, 1".parse().unwrap());
        assert!(a.is_linear());
        assert!(matches!(
            move_lambda_action(&Move::Stabilize, 2),
            Err(PresentationError::NoLambdaAction(_))
        ));
    }

    #[test]
    fn automorph_lambda_action_twists() {
        // swap sends [x,[x,y]] (invariant X - 1) to [y,[y,x]] (invariant 1 - Y)
        let pres = Presentation::rank2(&["[x,[x,y]]"]).unwrap();
        let m = Move::Automorph(Endomorphism::nielsen(NielsenKind::Swap));
        let action = move_lambda_action(&m, 1).unwrap();
        assert!(!action.is_linear());
        let before = lambda_vector(&pres).unwrap();
        let after = lambda_vector(&apply_move(&pres, &m).unwrap()).unwrap();
        assert_eq!(after, vec![parse_laurent("1 - Y").unwrap()]);
        assert_eq!(action.apply(&before).unwrap(), after);
    }

    #[test]
    fn file_formats() {
        let text = "# P\ngenerators: x y\nrelator: [x,y]\nrelator: 1\n";
        let parsed: Presentation = text.parse().unwrap();
        assert_eq!(parsed, p0());
        assert_eq!(parsed.to_string().parse::<Presentation>().unwrap(), parsed);
        assert!(matches!(
            "generators: x q\n".parse::<Presentation>(),
            Err(PresentationError::Syntax { line: 1, .. })
        ));
        assert!(matches!(
            "relator: x\n".parse::<Presentation>(),
            Err(PresentationError::Syntax { .. })
        ));
        assert!(matches!(
            "generators: x y\nrelator: z\n".parse::<Presentation>(),
            Err(PresentationError::ForeignGenerator { .. })
        ));

        let script = parse_script("mult 2 1\ninvert 1 # flip\n\nconj 2 x y^-1\nauto x y ; y\nstab\ndestab\n").unwrap();
        assert_eq!(
            script,
            vec![
                Move::Mult { j: 2, i: 1 },
                Move::Invert { j: 1 },
                Move::Conjugate { j: 2, g: w("xy^-1") },
                Move::Automorph(Endomorphism::new(w("xy"), w("y"))),
                Move::Stabilize,
                Move::Destabilize,
            ]
        );
        assert_eq!(parse_script(&format_script(&script)).unwrap(), script);
        assert!(matches!(parse_script("mult 1\n"), Err(PresentationError::Syntax { line: 1, .. })));
        assert!(matches!(parse_script("x\nfoo 1"), Err(PresentationError::Syntax { line: 1, .. })));
    }

    #[test]
    fn swap_script_swaps() {
        let pres = Presentation::rank2(&["[x,y]", "[x,[x,y]]", "[y,x^2]"]).unwrap();
        let s = swap_script(&pres, 1, 3).unwrap();
        let swapped = apply_script(&pres, &s).unwrap();
        assert_eq!(swapped, Presentation::rank2(&["[y,x^2]", "[x,[x,y]]", "[x,y]"]).unwrap());
    }

    #[test]
    fn search_examples() {
        let bounds = SearchBounds {
            max_moves: 2,
            max_conjugator_len: 1,
            ..SearchBounds::default()
        };
        let goal = apply_move(&p0(), &Move::Invert { j: 1 }).unwrap();
        let out = bounded_search(&p0(), &goal, &bounds).unwrap();
        assert_eq!(out.script, Some(vec![Move::Invert { j: 1 }]));

        let out = bounded_search(&p0(), &p0(), &bounds).unwrap();
        assert_eq!(out.script, Some(vec![]));

        // reached through a canonical-key match plus normalization
        let goal = Presentation::rank2(&["1", "x[x,y]x^-1"]).unwrap();
        let out = bounded_search(&p0(), &goal, &bounds).unwrap();
        let script = out.script.expect("reachable");
        assert_eq!(apply_script(&p0(), &script).unwrap(), goal);
    }

    #[test]
    fn search_small_negative_is_deterministic() {
        let bounds = SearchBounds {
            max_moves: 3,
            max_conjugator_len: 1,
            ..SearchBounds::default()
        };
        let seq = bounded_search(&p0(), &q(), &SearchBounds { execution: Execution::Sequential, ..bounds }).unwrap();
        let par = bounded_search(&p0(), &q(), &SearchBounds { execution: Execution::Parallel, ..bounds }).unwrap();
        assert_eq!(seq, par);
        assert!(seq.script.is_none());
    }
}
