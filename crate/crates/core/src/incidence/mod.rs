//! Finite point-line incidence structures and the generalized quadrangle
//! axioms.
//!
//! Lines are stored as strictly ascending point lists and the line list is
//! kept in canonical (lexicographic) order, so two structures compare equal
//! exactly when they have the same point count and the same line sets.

mod axioms;
mod format;
mod subquadrangle;

use std::fmt;

use fixedbitset::FixedBitSet;
use thiserror::Error;

pub(crate) use axioms::IncidenceGraph;
pub use axioms::{
    order_of, validate_gq, validate_gq_with, AxiomSummary, GeneralizedQuadrangle, GqOrder, GqReport, GqWitness,
    NotAQuadrangle, ParameterValue, Verdict,
};
pub use format::{parse_incidence, serialize_incidence, ParseError};
pub use subquadrangle::{find_full_subquadrangles, is_subquadrangle, Embedding, EmbeddingError, SubQuadrangleRelation};

/// A point or a line of an incidence structure.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Element {
    Point(usize),
    Line(usize),
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Point(p) => write!(f, "p{p}"),
            Element::Line(l) => write!(f, "L{l}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IncidenceError {
    #[error("line {line}: point index {point} out of range (point count {point_count})")]
    OutOfRange {
        line: usize,
        point: usize,
        point_count: usize,
    },
    #[error("line {line}: point {point} listed twice")]
    RepeatedPoint { line: usize, point: usize },
    #[error("line {line} has {size} point(s); at least 2 required")]
    ShortLine { line: usize, size: usize },
    #[error("lines {first} and {second} have the same point set")]
    DuplicateLine { first: usize, second: usize },
    #[error("empty point set")]
    EmptySet,
    #[error("dual is degenerate: {0}")]
    DegenerateDual(Box<IncidenceError>),
}

/// Points `0..point_count` and a canonical list of lines.
#[derive(Clone)]
pub struct IncidenceStructure {
    point_count: usize,
    lines: Vec<Vec<usize>>,
    point_lines: Vec<Vec<usize>>,
    collinear: Vec<FixedBitSet>,
}

impl PartialEq for IncidenceStructure {
    fn eq(&self, other: &Self) -> bool {
        self.point_count == other.point_count && self.lines == other.lines
    }
}

impl Eq for IncidenceStructure {}

impl fmt::Debug for IncidenceStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("IncidenceStructure")
            .field("point_count", &self.point_count)
            .field("lines", &self.lines)
            .finish()
    }
}

impl IncidenceStructure {
    /// Builds a structure from raw lines. Each line is sorted, then the line
    /// list is sorted; errors refer to the caller's line positions.
    pub fn new(point_count: usize, lines: Vec<Vec<usize>>) -> Result<Self, IncidenceError> {
        let mut keyed = Vec::with_capacity(lines.len());
        for (idx, mut line) in lines.into_iter().enumerate() {
            line.sort_unstable();
            if let Some(&p) = line.iter().find(|&&p| p >= point_count) {
                return Err(IncidenceError::OutOfRange {
                    line: idx,
                    point: p,
                    point_count,
                });
            }
            if let Some(w) = line.windows(2).find(|w| w[0] == w[1]) {
                return Err(IncidenceError::RepeatedPoint { line: idx, point: w[0] });
            }
            if line.len() < 2 {
                return Err(IncidenceError::ShortLine {
                    line: idx,
                    size: line.len(),
                });
            }
            keyed.push((line, idx));
        }
        keyed.sort();
        if let Some(w) = keyed.windows(2).find(|w| w[0].0 == w[1].0) {
            let (a, b) = (w[0].1.min(w[1].1), w[0].1.max(w[1].1));
            return Err(IncidenceError::DuplicateLine { first: a, second: b });
        }
        let lines: Vec<Vec<usize>> = keyed.into_iter().map(|(l, _)| l).collect();

        let mut point_lines = vec![Vec::new(); point_count];
        let mut collinear = vec![FixedBitSet::with_capacity(point_count); point_count];
        for (li, line) in lines.iter().enumerate() {
            for &p in line {
                point_lines[p].push(li);
                for &q in line {
                    if q != p {
                        collinear[p].insert(q);
                    }
                }
            }
        }
        Ok(Self {
            point_count,
            lines,
            point_lines,
            collinear,
        })
    }

    pub fn point_count(&self) -> usize {
        self.point_count
    }

    pub fn line_count(&self) -> usize {
        self.lines.len()
    }

    pub fn lines(&self) -> &[Vec<usize>] {
        &self.lines
    }

    pub fn line(&self, index: usize) -> &[usize] {
        &self.lines[index]
    }

    /// Lines through `point`, ascending.
    pub fn lines_through(&self, point: usize) -> &[usize] {
        &self.point_lines[point]
    }

    pub fn is_incident(&self, point: usize, line: usize) -> bool {
        self.lines[line].binary_search(&point).is_ok()
    }

    /// Distinct points on a common line.
    pub fn collinear(&self, a: usize, b: usize) -> bool {
        self.collinear[a].contains(b)
    }

    /// Collinearity row of `point` (the point itself excluded).
    pub fn collinear_set(&self, point: usize) -> &FixedBitSet {
        &self.collinear[point]
    }

    /// Index of the line with exactly these points, if any.
    pub fn line_index(&self, points: &[usize]) -> Option<usize> {
        let mut key = points.to_vec();
        key.sort_unstable();
        self.lines.binary_search(&key).ok()
    }

    /// The line through two distinct points, if they are collinear.
    pub fn line_through(&self, a: usize, b: usize) -> Option<usize> {
        self.point_lines[a].iter().copied().find(|&l| self.is_incident(b, l))
    }

    /// Whether two lines share a point.
    pub fn lines_meet(&self, l: usize, m: usize) -> Option<usize> {
        let (a, b) = (&self.lines[l], &self.lines[m]);
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => return Some(a[i]),
            }
        }
        None
    }

    /// Points collinear with or equal to every member of `xs`. A point is in
    /// its own perp, so for a collinear pair this is their joining line.
    pub fn perp(&self, xs: &[usize]) -> Result<Vec<usize>, IncidenceError> {
        let first = *xs.first().ok_or(IncidenceError::EmptySet)?;
        if let Some(&p) = xs.iter().find(|&&p| p >= self.point_count) {
            return Err(IncidenceError::OutOfRange {
                line: 0,
                point: p,
                point_count: self.point_count,
            });
        }
        let mut acc = self.closed_neighbourhood(first);
        for &x in &xs[1..] {
            acc.intersect_with(&self.closed_neighbourhood(x));
        }
        Ok(acc.ones().collect())
    }

    /// `perp(perp(xs))`. When `perp(xs)` is empty the outer perp is the
    /// empty intersection, i.e. every point.
    pub fn span(&self, xs: &[usize]) -> Result<Vec<usize>, IncidenceError> {
        let once = self.perp(xs)?;
        if once.is_empty() {
            return Ok((0..self.point_count).collect());
        }
        self.perp(&once)
    }

    fn closed_neighbourhood(&self, p: usize) -> FixedBitSet {
        let mut set = self.collinear[p].clone();
        set.insert(p);
        set
    }

    /// Points and lines exchanged. The dual of a structure in which some
    /// point lies on fewer than two lines (or two points share all their
    /// lines) is not a valid incidence structure and is reported as such.
    pub fn dual(&self) -> Result<IncidenceStructure, IncidenceError> {
        IncidenceStructure::new(self.lines.len(), self.point_lines.clone())
            .map_err(|e| IncidenceError::DegenerateDual(Box::new(e)))
    }

    /// Relabels points by `perm` (old index -> new index).
    pub fn relabel_points(&self, perm: &[usize]) -> Result<IncidenceStructure, IncidenceError> {
        let lines = self
            .lines
            .iter()
            .map(|l| l.iter().map(|&p| perm[p]).collect())
            .collect();
        IncidenceStructure::new(self.point_count, lines)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle_free_line() -> IncidenceStructure {
        IncidenceStructure::new(3, vec![vec![2, 0, 1]]).unwrap()
    }

    #[test]
    fn construction_canonicalizes() {
        let g = IncidenceStructure::new(4, vec![vec![3, 2], vec![1, 0]]).unwrap();
        assert_eq!(g.lines(), &[vec![0, 1], vec![2, 3]]);
        assert_eq!(g.line_index(&[3, 2]), Some(1));
        assert!(g.collinear(0, 1));
        assert!(!g.collinear(0, 2));
        assert_eq!(triangle_free_line().line(0), &[0, 1, 2]);
    }

    #[test]
    fn invariant_violations() {
        assert!(matches!(
            IncidenceStructure::new(2, vec![vec![0, 5]]),
            Err(IncidenceError::OutOfRange { point: 5, .. })
        ));
        assert!(matches!(
            IncidenceStructure::new(2, vec![vec![0]]),
            Err(IncidenceError::ShortLine { line: 0, size: 1 })
        ));
        assert!(matches!(
            IncidenceStructure::new(3, vec![vec![0, 1], vec![2, 0], vec![1, 0]]),
            Err(IncidenceError::DuplicateLine { first: 0, second: 2 })
        ));
        assert!(matches!(
            IncidenceStructure::new(3, vec![vec![0, 0, 1]]),
            Err(IncidenceError::RepeatedPoint { point: 0, .. })
        ));
    }

    #[test]
    fn perp_is_reflexive_and_rejects_empty() {
        let g = triangle_free_line();
        assert_eq!(g.perp(&[0]).unwrap(), vec![0, 1, 2]);
        assert_eq!(g.perp(&[]), Err(IncidenceError::EmptySet));
    }

    #[test]
    fn dual_of_single_line_is_degenerate() {
        assert!(matches!(
            triangle_free_line().dual(),
            Err(IncidenceError::DegenerateDual(_))
        ));
    }

    #[test]
    fn lines_meet_finds_common_point() {
        let g = IncidenceStructure::new(5, vec![vec![0, 1, 2], vec![2, 3, 4], vec![0, 3]]).unwrap();
        let (a, b) = (g.line_index(&[0, 1, 2]).unwrap(), g.line_index(&[0, 3]).unwrap());
        assert_eq!(g.lines_meet(a, b), Some(0));
        assert_eq!(g.lines_meet(b, g.line_index(&[2, 3, 4]).unwrap()), Some(3));
        assert_eq!(g.line_through(2, 4), g.line_index(&[2, 3, 4]));
    }
}
