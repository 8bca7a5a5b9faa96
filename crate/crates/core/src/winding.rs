//! The winding invariant of a word in the commutator subgroup of `F(x, y)`.
//!
//! A word traces a closed loop on the integer grid; `a_{i,j}` is the winding
//! number of that loop around the cell centre `(i + 1/2, j + 1/2)`, and the
//! invariant is `P_w = sum a_{i,j} X^i Y^j`. Counterclockwise is positive, so
//! `P_[x,y] = 1`.
//!
//! Two independent routes are provided. [`winding_invariant`] sums a column
//! polynomial per vertical step; [`winding_grid_oracle`] casts a ray from
//! every cell centre. Tests hold them equal.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::exec::{self, Execution};
use crate::laurent::{LaurentError, LaurentPoly};
use crate::presentations::Presentation;
use crate::words::{Generator, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WindingError {
    #[error("word `{0}` is not in the commutator subgroup (nonzero exponent sums)")]
    NotCommutator(String),
    #[error("word `{0}` uses generators other than x and y")]
    NotRank2(String),
    #[error("relator {0} is not in the commutator subgroup")]
    NotCocommutative(usize),
    #[error(transparent)]
    Laurent(#[from] LaurentError),
}

fn check_input(w: &Word) -> Result<(), WindingError> {
    if !w.is_rank2() {
        return Err(WindingError::NotRank2(w.to_string()));
    }
    if !w.is_commutator_element() {
        return Err(WindingError::NotCommutator(w.to_string()));
    }
    Ok(())
}

/// Incremental route: each `y^e` step at horizontal position `k`, spanning
/// heights `j..j+1`, contributes `e * q_k * Y^j` where `q_k` is
/// [`LaurentPoly::geometric_column`].
pub fn winding_invariant(w: &Word) -> Result<LaurentPoly, WindingError> {
    check_input(w)?;
    let mut acc = LaurentPoly::zero();
    let (mut k, mut l) = (0i64, 0i64);
    for letter in w.letters() {
        let e = letter.sign();
        if letter.generator == Generator::X {
            k += e;
            continue;
        }
        let j = if e > 0 { l } else { l - 1 };
        let column = LaurentPoly::geometric_column(k)
            .shift(0, j)
            .checked_scale(e)?;
        acc = acc.checked_add(&column)?;
        l += e;
    }
    Ok(acc)
}

/// Per-cell winding numbers `a_{i,j}`, zero cells omitted.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct WindingGrid {
    pub cells: BTreeMap<(i64, i64), i64>,
}

impl WindingGrid {
    pub fn get(&self, i: i64, j: i64) -> i64 {
        self.cells.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn to_poly(&self) -> LaurentPoly {
        LaurentPoly::from_terms(self.cells.iter().map(|(&ij, &a)| (ij, a)))
            .expect("grid winding numbers are small")
    }

    pub fn total(&self) -> i64 {
        self.cells.values().sum()
    }
}

/// Ray-casting oracle, sequential or row-parallel.
pub fn winding_grid_oracle_with(w: &Word, execution: Execution) -> Result<WindingGrid, WindingError> {
    check_input(w)?;
    let path = w.trace_path().map_err(|_| WindingError::NotRank2(w.to_string()))?;
    let (min_x, max_x, min_y, max_y) = path.bounding_box();

    // vertical unit segments: (x, lower height, +1 up / -1 down)
    let verticals: Vec<(i64, i64, i64)> = path
        .points
        .windows(2)
        .filter(|s| s[0].0 == s[1].0)
        .map(|s| (s[0].0, s[0].1.min(s[1].1), s[1].1 - s[0].1))
        .collect();

    let rows: Vec<i64> = (min_y..max_y).collect();
    let per_row = exec::map(execution, &rows, |&j| {
        let crossings: Vec<(i64, i64)> = verticals
            .iter()
            .filter(|v| v.1 == j)
            .map(|v| (v.0, v.2))
            .collect();
        (min_x..max_x)
            .filter_map(|i| {
                // ray from (i + 1/2, j + 1/2) towards +x meets segments with x > i + 1/2
                let a: i64 = crossings.iter().filter(|c| c.0 > i).map(|c| c.1).sum();
                (a != 0).then_some(((i, j), a))
            })
            .collect::<Vec<_>>()
    });
    Ok(WindingGrid {
        cells: per_row.into_iter().flatten().collect(),
    })
}

pub fn winding_grid_oracle(w: &Word) -> Result<WindingGrid, WindingError> {
    winding_grid_oracle_with(w, Execution::default())
}

/// `Λ(P)`: the winding invariants of the relators of a cocommutative
/// presentation.
pub fn lambda_vector(p: &Presentation) -> Result<Vec<LaurentPoly>, WindingError> {
    p.relators()
        .iter()
        .enumerate()
        .map(|(idx, r)| match winding_invariant(r) {
            Err(WindingError::NotCommutator(_)) | Err(WindingError::NotRank2(_)) => {
                Err(WindingError::NotCocommutative(idx + 1))
            }
            other => other,
        })
        .collect()
}

/// Equality in the free metabelian group `F2 / F2''`: same abelianization,
/// and `u v^-1` has zero winding invariant.
///
/// Words outside `F(x, y)` only compare equal when identical.
pub fn equal_mod_second_derived(u: &Word, v: &Word) -> bool {
    if !u.is_rank2() || !v.is_rank2() {
        return u == v;
    }
    if u.exponent_sums() != v.exponent_sums() {
        return false;
    }
    winding_invariant(&u.mul(&v.inverse()))
        .map(|p| p.is_zero())
        .unwrap_or(false)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RenderFormat {
    Ascii,
    Svg,
}

/// Draws the traced loop with the winding number in every nonzero cell.
pub fn render_grid(w: &Word, format: RenderFormat) -> Result<String, WindingError> {
    let grid = winding_grid_oracle_with(w, Execution::Sequential)?;
    let path = w.trace_path().map_err(|_| WindingError::NotRank2(w.to_string()))?;
    Ok(match format {
        RenderFormat::Ascii => render_ascii(&path.points, &grid),
        RenderFormat::Svg => render_svg(&path.points, &grid),
    })
}

fn edge_sets(points: &[(i64, i64)]) -> (Vec<(i64, i64)>, Vec<(i64, i64)>) {
    // keyed by the lower-left endpoint
    let mut horizontal = Vec::new();
    let mut vertical = Vec::new();
    for s in points.windows(2) {
        let lo = (s[0].0.min(s[1].0), s[0].1.min(s[1].1));
        if s[0].1 == s[1].1 {
            horizontal.push(lo);
        } else {
            vertical.push(lo);
        }
    }
    horizontal.sort_unstable();
    horizontal.dedup();
    vertical.sort_unstable();
    vertical.dedup();
    (horizontal, vertical)
}

fn render_ascii(points: &[(i64, i64)], grid: &WindingGrid) -> String {
    let (min_x, max_x, min_y, max_y) = bounding_box(points);
    let (horizontal, vertical) = edge_sets(points);
    let width = grid
        .cells
        .values()
        .map(|a| a.to_string().len())
        .max()
        .unwrap_or(0)
        .max(3);
    let on_path = |p: (i64, i64)| points.contains(&p);

    let mut out = String::new();
    for y in (min_y..=max_y).rev() {
        let mut line = String::new();
        for x in min_x..=max_x {
            line.push(if (x, y) == (0, 0) {
                'o'
            } else if on_path((x, y)) {
                '+'
            } else {
                '.'
            });
            if x < max_x {
                let fill = if horizontal.binary_search(&(x, y)).is_ok() { '-' } else { ' ' };
                line.extend(std::iter::repeat_n(fill, width));
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
        if y == min_y {
            break;
        }
        let row = y - 1;
        let mut line = String::new();
        for x in min_x..=max_x {
            line.push(if vertical.binary_search(&(x, row)).is_ok() { '|' } else { ' ' });
            if x < max_x {
                let a = grid.get(x, row);
                if a == 0 {
                    line.push_str(&" ".repeat(width));
                } else {
                    let _ = write!(line, "{a:^width$}");
                }
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

fn bounding_box(points: &[(i64, i64)]) -> (i64, i64, i64, i64) {
    crate::words::PathTrace {
        points: points.to_vec(),
    }
    .bounding_box()
}

const SVG_UNIT: i64 = 40;
const SVG_MARGIN: i64 = 20;

fn render_svg(points: &[(i64, i64)], grid: &WindingGrid) -> String {
    let (min_x, max_x, min_y, max_y) = bounding_box(points);
    let w = (max_x - min_x) * SVG_UNIT + 2 * SVG_MARGIN;
    let h = (max_y - min_y) * SVG_UNIT + 2 * SVG_MARGIN;
    let px = |x: i64| (x - min_x) * SVG_UNIT + SVG_MARGIN;
    let py = |y: i64| (max_y - y) * SVG_UNIT + SVG_MARGIN;

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#
    );
    let _ = writeln!(s, r##"  <g stroke="#ccc" stroke-width="1" fill="none">"##);
    for j in min_y..max_y {
        for i in min_x..max_x {
            let _ = writeln!(
                s,
                r#"    <rect x="{}" y="{}" width="{SVG_UNIT}" height="{SVG_UNIT}"/>"#,
                px(i),
                py(j + 1)
            );
        }
    }
    let _ = writeln!(s, "  </g>");
    let coords: Vec<String> = points.iter().map(|&(x, y)| format!("{},{}", px(x), py(y))).collect();
    let _ = writeln!(
        s,
        r#"  <polyline points="{}" stroke="black" stroke-width="2" fill="none"/>"#,
        coords.join(" ")
    );
    let _ = writeln!(s, r#"  <circle cx="{}" cy="{}" r="5" fill="black"/>"#, px(0), py(0));
    for (&(i, j), &a) in &grid.cells {
        let _ = writeln!(
            s,
            r#"  <text x="{}" y="{}" font-family="monospace" font-size="14" text-anchor="middle" dominant-baseline="central">{a}</text>"#,
            px(i) + SVG_UNIT / 2,
            py(j) - SVG_UNIT / 2
        );
    }
    s.push_str("</svg>\n");
    s
}
