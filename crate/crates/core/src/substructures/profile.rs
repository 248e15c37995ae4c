//! Coverage of an ovoid by the trace `{x,y}^⊥` of two of its points.

use thiserror::Error;

use crate::incidence::IncidenceStructure;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProfileError {
    #[error("point {0} out of range")]
    OutOfRange(usize),
    #[error("point {0} is not in the ovoid")]
    NotInOvoid(usize),
    #[error("x and y must differ")]
    SamePoint,
    #[error("points {0} and {1} are collinear")]
    Collinear(usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverageRow {
    pub u: usize,
    /// Members of `{x,y}^⊥` collinear with `u`.
    pub covering: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectionProfile {
    pub x: usize,
    pub y: usize,
    pub trace: Vec<usize>,
    pub rows: Vec<CoverageRow>,
    /// Rows with an empty covering list.
    pub uncovered: Vec<usize>,
    /// First line not meeting the ovoid exactly once, with its hit count.
    pub bad_line: Option<(usize, usize)>,
    /// For each trace point, the number of lines through it meeting
    /// `O \ {x,y}`.
    pub line_counts: Vec<(usize, usize)>,
    pub line_count_total: usize,
}

impl ProjectionProfile {
    pub fn all_covered(&self) -> bool {
        self.uncovered.is_empty()
    }

    pub fn meets_every_line_once(&self) -> bool {
        self.bad_line.is_none()
    }

    /// Σ over the trace of lines meeting `O \ {x,y}` against `|O| - 2`.
    pub fn pigeonhole_holds(&self) -> bool {
        self.line_count_total >= self.rows.len()
    }
}

pub fn ovoid_projection_profile(
    g: &IncidenceStructure,
    ovoid: &[usize],
    x: usize,
    y: usize,
) -> Result<ProjectionProfile, ProfileError> {
    if let Some(&p) = ovoid.iter().chain([&x, &y]).find(|&&p| p >= g.point_count()) {
        return Err(ProfileError::OutOfRange(p));
    }
    for p in [x, y] {
        if !ovoid.contains(&p) {
            return Err(ProfileError::NotInOvoid(p));
        }
    }
    if x == y {
        return Err(ProfileError::SamePoint);
    }
    if g.collinear(x, y) {
        return Err(ProfileError::Collinear(x, y));
    }
    let mut members = ovoid.to_vec();
    members.sort_unstable();
    members.dedup();

    let trace = g.perp(&[x, y]).expect("points checked in range");
    let rest: Vec<usize> = members.iter().copied().filter(|&u| u != x && u != y).collect();
    let rows: Vec<CoverageRow> = rest
        .iter()
        .map(|&u| CoverageRow {
            u,
            covering: trace.iter().copied().filter(|&z| g.collinear(u, z)).collect(),
        })
        .collect();
    let uncovered = rows.iter().filter(|r| r.covering.is_empty()).map(|r| r.u).collect();
    let bad_line = (0..g.line_count()).find_map(|l| {
        let hits = g.line(l).iter().filter(|p| members.binary_search(p).is_ok()).count();
        (hits != 1).then_some((l, hits))
    });
    let line_counts: Vec<(usize, usize)> = trace
        .iter()
        .map(|&z| {
            let n = g
                .lines_through(z)
                .iter()
                .filter(|&&l| g.line(l).iter().any(|p| rest.binary_search(p).is_ok()))
                .count();
            (z, n)
        })
        .collect();
    let line_count_total = line_counts.iter().map(|&(_, n)| n).sum();
    Ok(ProjectionProfile {
        x,
        y,
        trace,
        rows,
        uncovered,
        bad_line,
        line_counts,
        line_count_total,
    })
}
