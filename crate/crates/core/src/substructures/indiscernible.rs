//! Indiscernibility of finite ordered line families under a full
//! automorphism group.

use thiserror::Error;

use super::automorphism::{map_tuple, AutomorphismGroup};
use crate::incidence::{Element, IncidenceStructure};
use crate::par::{self, Execution};

/// Lines indexed by list position; position order is the family's order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderedLineFamily {
    lines: Vec<usize>,
}

impl OrderedLineFamily {
    pub fn new(g: &IncidenceStructure, lines: Vec<usize>) -> Result<Self, IndiscernibilityError> {
        if let Some(&l) = lines.iter().find(|&&l| l >= g.line_count()) {
            return Err(IndiscernibilityError::OutOfRange(l));
        }
        for (i, &a) in lines.iter().enumerate() {
            if lines[..i].contains(&a) {
                return Err(IndiscernibilityError::Repeated(a));
            }
        }
        Ok(Self { lines })
    }

    pub fn lines(&self) -> &[usize] {
        &self.lines
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    /// First pair of members sharing a point.
    pub fn first_meeting_pair(&self, g: &IncidenceStructure) -> Option<(usize, usize, usize)> {
        self.lines.iter().enumerate().find_map(|(i, &a)| {
            self.lines[i + 1..]
                .iter()
                .find_map(|&b| g.lines_meet(a, b).map(|p| (a, b, p)))
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IndiscernibilityError {
    #[error("line {0} out of range")]
    OutOfRange(usize),
    #[error("line {0} listed twice")]
    Repeated(usize),
    #[error("tuple length {n} exceeds family size {size}")]
    TooLong { n: usize, size: usize },
    #[error("lines {0} and {1} meet in point {2}")]
    NonSkew(usize, usize, usize),
    #[error("group does not act on this structure")]
    GroupMismatch,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IndiscernibilityOptions {
    /// Reject families with two intersecting members.
    pub require_skew: bool,
    pub exec: Execution,
}

impl Default for IndiscernibilityOptions {
    fn default() -> Self {
        Self {
            require_skew: true,
            exec: Execution::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndiscernibilityVerdict {
    pub n: usize,
    pub passed: bool,
    pub tuples: usize,
    /// Two increasing tuples (as line indices) with no automorphism carrying
    /// the first onto the second.
    pub counterexample: Option<(Vec<usize>, Vec<usize>)>,
}

/// Tests whether all increasing `n`-tuples of `fam` lie in one orbit of
/// `group`. Conjugacy is an equivalence, so comparing each tuple with the
/// first one settles every pair.
pub fn is_indiscernible(
    g: &IncidenceStructure,
    group: &AutomorphismGroup,
    fam: &OrderedLineFamily,
    n: usize,
    opts: IndiscernibilityOptions,
) -> Result<IndiscernibilityVerdict, IndiscernibilityError> {
    if n > fam.len() {
        return Err(IndiscernibilityError::TooLong { n, size: fam.len() });
    }
    if group
        .elements()
        .first()
        .is_some_and(|a| a.point_perm().len() != g.point_count() || a.line_perm().len() != g.line_count())
    {
        return Err(IndiscernibilityError::GroupMismatch);
    }
    if opts.require_skew {
        if let Some((a, b, p)) = fam.first_meeting_pair(g) {
            return Err(IndiscernibilityError::NonSkew(a, b, p));
        }
    }
    let tuples: Vec<Vec<usize>> = increasing_tuples(fam.len(), n)
        .into_iter()
        .map(|t| t.into_iter().map(|i| fam.lines[i]).collect())
        .collect();
    let as_elements = |t: &[usize]| t.iter().map(|&l| Element::Line(l)).collect::<Vec<_>>();
    let base = as_elements(&tuples[0]);
    let failing = par::find_map_first(opts.exec, 1..tuples.len(), |i| {
        let found = map_tuple(group, &base, &as_elements(&tuples[i])).expect("line tuples of equal length");
        found.is_none().then_some(i)
    });
    Ok(IndiscernibilityVerdict {
        n,
        passed: failing.is_none(),
        tuples: tuples.len(),
        counterexample: failing.map(|i| (tuples[0].clone(), tuples[i].clone())),
    })
}

/// Strictly increasing index tuples of length `n` from `0..size`, in
/// lexicographic order.
fn increasing_tuples(size: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    if n > size {
        return out;
    }
    loop {
        out.push(cur.clone());
        let Some(i) = (0..n).rev().find(|&i| cur[i] < size - n + i) else {
            return out;
        };
        cur[i] += 1;
        for j in i + 1..n {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classical::{build_grid, grid_columns, grid_rows};
    use crate::substructures::automorphism_group;

    #[test]
    fn tuple_enumeration() {
        assert_eq!(increasing_tuples(4, 2).len(), 6);
        assert_eq!(increasing_tuples(3, 0), vec![Vec::<usize>::new()]);
        assert_eq!(increasing_tuples(3, 3), vec![vec![0, 1, 2]]);
    }

    #[test]
    fn grid_rows_and_mixed_family() {
        let g = build_grid(3, 5).unwrap();
        let aut = automorphism_group(&g).unwrap();
        let rows = OrderedLineFamily::new(&g, grid_rows(&g, 3, 5)).unwrap();
        for n in 1..=3 {
            let v = is_indiscernible(&g, &aut, &rows, n, Default::default()).unwrap();
            assert!(v.passed, "n = {n}");
        }
        let mixed = OrderedLineFamily::new(&g, vec![grid_rows(&g, 3, 5)[0], grid_columns(&g, 3, 5)[0]]).unwrap();
        assert!(matches!(
            is_indiscernible(&g, &aut, &mixed, 1, Default::default()),
            Err(IndiscernibilityError::NonSkew(..))
        ));
        let lax = IndiscernibilityOptions {
            require_skew: false,
            ..Default::default()
        };
        let v = is_indiscernible(&g, &aut, &mixed, 1, lax).unwrap();
        assert!(!v.passed);
        assert!(v.counterexample.is_some());
        assert!(matches!(
            is_indiscernible(&g, &aut, &rows, 4, Default::default()),
            Err(IndiscernibilityError::TooLong { n: 4, size: 3 })
        ));
    }
}
