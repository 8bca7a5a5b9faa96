//! Dense matrices over the Laurent ring, Evans' 2x2 matrix, and
//! certificates of membership in `GE_n(R)`.
//!
//! Membership in `GE_n` is never decided here; a [`GEFactor`] sequence is a
//! witness that [`check_ge_product`] can confirm.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::laurent::{parse_laurent, LaurentError, LaurentPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("determinant only supported for square matrices up to 4x4, got {0}x{1}")]
    Unsupported(usize, usize),
    #[error("determinant {0} is not a unit")]
    NotInvertible(String),
    #[error("invalid GE factor: {0}")]
    InvalidFactor(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("matrix parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Laurent(#[from] LaurentError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<LaurentPoly>,
}

impl LaurentMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        LaurentMatrix {
            rows,
            cols,
            entries: vec![LaurentPoly::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, LaurentPoly::one());
        }
        m
    }

    pub fn diagonal(entries: &[LaurentPoly]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, e) in entries.iter().enumerate() {
            m.set(i, i, e.clone());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<LaurentPoly>>) -> Result<Self, MatrixError> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if r == 0 || c == 0 {
            return Err(MatrixError::Dimension("empty matrix".into()));
        }
        if rows.iter().any(|row| row.len() != c) {
            return Err(MatrixError::Dimension("ragged rows".into()));
        }
        Ok(LaurentMatrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Zero-based entry access.
    pub fn get(&self, i: usize, j: usize) -> &LaurentPoly {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: LaurentPoly) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn column(&self, j: usize) -> Vec<LaurentPoly> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == Self::identity(self.rows)
    }

    pub fn mul(&self, other: &Self) -> Result<Self, MatrixError> {
        if self.cols != other.rows {
            return Err(MatrixError::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = LaurentPoly::zero();
                for k in 0..self.cols {
                    acc = acc.checked_add(&self.get(i, k).checked_mul(other.get(k, j))?)?;
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    /// Applies `M * v` to a column vector.
    pub fn apply(&self, v: &[LaurentPoly]) -> Result<Vec<LaurentPoly>, MatrixError> {
        let col = LaurentMatrix::from_rows(v.iter().map(|e| vec![e.clone()]).collect())?;
        Ok(self.mul(&col)?.column(0))
    }

    pub fn scale(&self, s: &LaurentPoly) -> Result<Self, MatrixError> {
        let entries = self
            .entries
            .iter()
            .map(|e| e.checked_mul(s))
            .collect::<Result<_, _>>()?;
        Ok(LaurentMatrix { entries, ..*self })
    }

    /// Cofactor expansion along the first row; square matrices up to 4x4.
    pub fn det(&self) -> Result<LaurentPoly, MatrixError> {
        if self.rows != self.cols || self.rows > 4 {
            return Err(MatrixError::Unsupported(self.rows, self.cols));
        }
        let idx: Vec<usize> = (0..self.rows).collect();
        Ok(self.minor_det(&idx, &idx)?)
    }

    fn minor_det(&self, rows: &[usize], cols: &[usize]) -> Result<LaurentPoly, LaurentError> {
        match rows.len() {
            0 => Ok(LaurentPoly::one()),
            1 => Ok(self.get(rows[0], cols[0]).clone()),
            _ => {
                let mut acc = LaurentPoly::zero();
                for (n, &c) in cols.iter().enumerate() {
                    let entry = self.get(rows[0], c);
                    if entry.is_zero() {
                        continue;
                    }
                    let sub_cols: Vec<usize> = cols.iter().copied().filter(|&k| k != c).collect();
                    let term = entry.checked_mul(&self.minor_det(&rows[1..], &sub_cols)?)?;
                    acc = if n % 2 == 0 {
                        acc.checked_add(&term)?
                    } else {
                        acc.checked_sub(&term)?
                    };
                }
                Ok(acc)
            }
        }
    }

    /// `A^-1 = det(A)^-1 * adj(A)` for a 2x2 matrix with unit determinant.
    pub fn adjugate_inverse_2x2(&self) -> Result<Self, MatrixError> {
        if self.rows != 2 || self.cols != 2 {
            return Err(MatrixError::Dimension(format!(
                "expected 2x2, got {}x{}",
                self.rows, self.cols
            )));
        }
        let d = self.det()?;
        let inv = d
            .unit_inverse()
            .ok_or_else(|| MatrixError::NotInvertible(d.to_string()))?;
        let adj = LaurentMatrix::from_rows(vec![
            vec![self.get(1, 1).clone(), self.get(0, 1).checked_neg()?],
            vec![self.get(1, 0).checked_neg()?, self.get(0, 0).clone()],
        ])?;
        adj.scale(&inv)
    }
}

impl fmt::Display for LaurentMatrix {
    /// Rows separated by `;`, entries by `,`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            if i > 0 {
                f.write_str("; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        Ok(())
    }
}

impl FromStr for LaurentMatrix {
    type Err = MatrixError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let rows = s
            .split(';')
            .map(|row| {
                row.split(',')
                    .map(|e| parse_laurent(e.trim()).map_err(|err| MatrixError::Parse(err.to_string())))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        LaurentMatrix::from_rows(rows)
    }
}

/// Evans' matrix, invertible over `Z[X^±1, Y^±1]` but not a product of
/// elementary and diagonal matrices:
///
/// ```text
/// [ 1 - 2(X-1)Y^-1     4Y^-1          ]
/// [ -(X-1)^2 Y^-1      1 + 2(X-1)Y^-1 ]
/// ```
pub fn evans_matrix() -> LaurentMatrix {
    let xm1 = LaurentPoly::x() - LaurentPoly::one();
    let yinv = LaurentPoly::monomial(0, -1, 1);
    let t = &xm1 * &yinv;
    let two_t = t.checked_scale(2).expect("small");
    LaurentMatrix::from_rows(vec![
        vec![LaurentPoly::one() - &two_t, yinv.checked_scale(4).expect("small")],
        vec![-(&(&xm1 * &xm1) * &yinv), LaurentPoly::one() + &two_t],
    ])
    .expect("2x2")
}

/// `col * row`, the rank-one matrix with entries `col_i * row_j`.
pub fn outer_product(col: &[LaurentPoly], row: &[LaurentPoly]) -> Result<LaurentMatrix, MatrixError> {
    LaurentMatrix::from_rows(
        col.iter()
            .map(|c| row.iter().map(|r| c.checked_mul(r)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?,
    )
}

/// Generator of `GE_n(R)`. Indices are 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GEFactor {
    /// Identity plus `a` at position `(i, j)`, `i != j`.
    Elementary { i: usize, j: usize, a: LaurentPoly },
    /// Diagonal matrix of units.
    Diagonal(Vec<LaurentPoly>),
}

impl GEFactor {
    pub fn realize(&self, n: usize) -> Result<LaurentMatrix, MatrixError> {
        match self {
            GEFactor::Elementary { i, j, a } => {
                if *i == *j || *i == 0 || *j == 0 || *i > n || *j > n {
                    return Err(MatrixError::InvalidFactor(format!(
                        "elementary position ({i}, {j}) in {n}x{n}"
                    )));
                }
                let mut m = LaurentMatrix::identity(n);
                m.set(i - 1, j - 1, a.clone());
                Ok(m)
            }
            GEFactor::Diagonal(units) => {
                if units.len() != n {
                    return Err(MatrixError::InvalidFactor(format!(
                        "diagonal of length {} in {n}x{n}",
                        units.len()
                    )));
                }
                if let Some(u) = units.iter().find(|u| !u.is_unit()) {
                    return Err(MatrixError::InvalidFactor(format!("{u} is not a unit")));
                }
                Ok(LaurentMatrix::diagonal(units))
            }
        }
    }
}

/// Ordered product of the realized factors, identity for an empty list.
pub fn ge_product(factors: &[GEFactor], n: usize) -> Result<LaurentMatrix, MatrixError> {
    factors
        .iter()
        .try_fold(LaurentMatrix::identity(n), |acc, f| acc.mul(&f.realize(n)?))
}

/// True iff the factors multiply out to `target`.
pub fn check_ge_product(factors: &[GEFactor], target: &LaurentMatrix) -> Result<bool, MatrixError> {
    if target.rows() != target.cols() {
        return Ok(false);
    }
    Ok(ge_product(factors, target.rows())? == *target)
}

/// For `N = [[1, A], [0, 1]]` returns `Elementary(1, 2, -A)`, the factor
/// that left-multiplies `N` to the identity. Any `N` fixing `e_1` with
/// determinant 1 has this shape.
pub fn reduce_e1_fixed(n: &LaurentMatrix) -> Result<GEFactor, MatrixError> {
    if n.rows() != 2 || n.cols() != 2 {
        return Err(MatrixError::Precondition("expected a 2x2 matrix".into()));
    }
    if !n.get(0, 0).is_one() || !n.get(1, 0).is_zero() {
        return Err(MatrixError::Precondition("first column is not e_1".into()));
    }
    let d = n.det()?;
    if !d.is_one() {
        return Err(MatrixError::Precondition(format!("determinant is {d}, not 1")));
    }
    Ok(GEFactor::Elementary {
        i: 1,
        j: 2,
        a: n.get(0, 1).checked_neg()?,
    })
}
