//! Concrete geometries: symplectic quadrangles over small fields, grids,
//! and the rational quadratic form `X0^2 + X1^2 - sum_{i >= 2} Xi^2`.

mod field;
mod form;

use std::collections::BTreeSet;

use thiserror::Error;

use crate::incidence::IncidenceStructure;

pub use field::SmallField;
pub use form::{iota_value, polarization, witt_witness, SparseRationalVector, VectorParseError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassicalError {
    #[error("unsupported field order {0}; expected one of 2, 3, 4")]
    UnsupportedOrder(u32),
    #[error("grid dimensions must both be at least 2 (got {0}x{1})")]
    GridTooSmall(usize, usize),
}

/// Points of PG(3, q) as normalized coordinate vectors (first nonzero
/// coordinate is 1), in lexicographic order. Point `i` of
/// [`build_symplectic`] has coordinates `symplectic_points(q)[i]`.
pub fn symplectic_points(q: u32) -> Result<Vec<[u8; 4]>, ClassicalError> {
    let f = SmallField::new(q).ok_or(ClassicalError::UnsupportedOrder(q))?;
    let q = f.order() as u8;
    let mut pts = Vec::new();
    for a in 0..q {
        for b in 0..q {
            for c in 0..q {
                for d in 0..q {
                    let v = [a, b, c, d];
                    if v.iter().find(|&&x| x != 0) == Some(&1) {
                        pts.push(v);
                    }
                }
            }
        }
    }
    Ok(pts)
}

/// The alternating form `x0 y3 - x3 y0 + x1 y2 - x2 y1`.
fn symplectic_form(f: &SmallField, x: &[u8; 4], y: &[u8; 4]) -> u8 {
    let t1 = f.sub(f.mul(x[0], y[3]), f.mul(x[3], y[0]));
    let t2 = f.sub(f.mul(x[1], y[2]), f.mul(x[2], y[1]));
    f.add(t1, t2)
}

/// W(q): points of PG(3, q), lines the totally isotropic lines of the
/// standard alternating form. Supported for q in {2, 3, 4}; the result is a
/// generalized quadrangle of order (q, q).
pub fn build_symplectic(q: u32) -> Result<IncidenceStructure, ClassicalError> {
    let f = SmallField::new(q).ok_or(ClassicalError::UnsupportedOrder(q))?;
    let pts = symplectic_points(q)?;
    let index = |v: &[u8; 4]| pts.binary_search(&f.normalize(*v)).expect("normalized point");

    let mut lines = BTreeSet::new();
    for (i, x) in pts.iter().enumerate() {
        for y in &pts[i + 1..] {
            if symplectic_form(&f, x, y) != 0 {
                continue;
            }
            let mut line = vec![index(x), index(y)];
            for c in 1..f.order() as u8 {
                let v = std::array::from_fn(|k| f.add(x[k], f.mul(c, y[k])));
                line.push(index(&v));
            }
            line.sort_unstable();
            line.dedup();
            lines.insert(line);
        }
    }
    Ok(IncidenceStructure::new(pts.len(), lines.into_iter().collect())
        .expect("isotropic lines form a valid incidence structure"))
}

/// The m x n grid: cell (i, j) is point `i * n + j`; lines are the m rows
/// and n columns.
pub fn build_grid(m: usize, n: usize) -> Result<IncidenceStructure, ClassicalError> {
    if m < 2 || n < 2 {
        return Err(ClassicalError::GridTooSmall(m, n));
    }
    let mut lines: Vec<Vec<usize>> = (0..m).map(|i| (0..n).map(|j| i * n + j).collect()).collect();
    lines.extend((0..n).map(|j| (0..m).map(|i| i * n + j).collect()));
    Ok(IncidenceStructure::new(m * n, lines).expect("grid lines are distinct"))
}

/// Line indices of the rows of a grid built by [`build_grid`], top to bottom.
pub fn grid_rows(g: &IncidenceStructure, m: usize, n: usize) -> Vec<usize> {
    (0..m)
        .filter_map(|i| g.line_index(&(0..n).map(|j| i * n + j).collect::<Vec<_>>()))
        .collect()
}

/// Line indices of the columns of a grid, left to right.
pub fn grid_columns(g: &IncidenceStructure, m: usize, n: usize) -> Vec<usize> {
    (0..n)
        .filter_map(|j| g.line_index(&(0..m).map(|i| i * n + j).collect::<Vec<_>>()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symplectic_counts() {
        // (q^2 + 1)(q + 1) points and lines, by independent formula.
        for q in [2u32, 3, 4] {
            let g = build_symplectic(q).unwrap();
            let expected = ((q * q + 1) * (q + 1)) as usize;
            assert_eq!(g.point_count(), expected, "q = {q}");
            assert_eq!(g.line_count(), expected, "q = {q}");
            assert!(g.lines().iter().all(|l| l.len() == q as usize + 1));
        }
        assert_eq!(build_symplectic(5), Err(ClassicalError::UnsupportedOrder(5)));
    }

    #[test]
    fn grid_shape() {
        let g = build_grid(2, 2).unwrap();
        assert_eq!((g.point_count(), g.line_count()), (4, 4));
        let g = build_grid(3, 5).unwrap();
        let rows = grid_rows(&g, 3, 5);
        let cols = grid_columns(&g, 3, 5);
        assert_eq!(rows.len(), 3);
        assert_eq!(cols.len(), 5);
        for p in 0..15 {
            let through = g.lines_through(p);
            assert_eq!(through.len(), 2);
            assert_eq!(through.iter().filter(|l| rows.contains(l)).count(), 1);
            assert_eq!(through.iter().filter(|l| cols.contains(l)).count(), 1);
        }
        assert_eq!(build_grid(1, 4), Err(ClassicalError::GridTooSmall(1, 4)));
    }
}
