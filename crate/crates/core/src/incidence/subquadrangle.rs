//! Sub-quadrangle relations and a small exhaustive search for full ones.

use std::collections::BTreeSet;

use fixedbitset::FixedBitSet;
use thiserror::Error;

use super::axioms::{validate_gq, GeneralizedQuadrangle};
use super::IncidenceStructure;

/// Injective maps from the candidate's points and lines into the host.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Embedding {
    pub points: Vec<usize>,
    pub lines: Vec<usize>,
}

impl Embedding {
    pub fn identity(g: &IncidenceStructure) -> Self {
        Self {
            points: (0..g.point_count()).collect(),
            lines: (0..g.line_count()).collect(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SubQuadrangleRelation {
    pub is_sub: bool,
    pub full: bool,
    pub ideal: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EmbeddingError {
    #[error("{what} map has {got} entries, expected {expected}")]
    WrongLength {
        what: &'static str,
        got: usize,
        expected: usize,
    },
    #[error("{what} map sends two elements to {target}")]
    NotInjective { what: &'static str, target: usize },
    #[error("{what} map target {target} out of range")]
    OutOfRange { what: &'static str, target: usize },
}

fn check_map(what: &'static str, map: &[usize], expected: usize, range: usize) -> Result<(), EmbeddingError> {
    if map.len() != expected {
        return Err(EmbeddingError::WrongLength {
            what,
            got: map.len(),
            expected,
        });
    }
    let mut seen = FixedBitSet::with_capacity(range);
    for &t in map {
        if t >= range {
            return Err(EmbeddingError::OutOfRange { what, target: t });
        }
        if seen.put(t) {
            return Err(EmbeddingError::NotInjective { what, target: t });
        }
    }
    Ok(())
}

/// Whether `sub`, placed by `embedding`, is a sub-quadrangle of `sup`, and
/// whether it is full (embedded lines keep all their host points) or ideal
/// (embedded points keep all their host lines).
pub fn is_subquadrangle(
    sub: &IncidenceStructure,
    sup: &GeneralizedQuadrangle,
    embedding: &Embedding,
) -> Result<SubQuadrangleRelation, EmbeddingError> {
    check_map("point", &embedding.points, sub.point_count(), sup.point_count())?;
    check_map("line", &embedding.lines, sub.line_count(), sup.line_count())?;

    let preserves = sub.lines().iter().enumerate().all(|(l, pts)| {
        pts.iter()
            .all(|&p| sup.is_incident(embedding.points[p], embedding.lines[l]))
    });
    let is_sub = preserves && validate_gq(sub).passed();
    if !is_sub {
        return Ok(SubQuadrangleRelation {
            is_sub: false,
            full: false,
            ideal: false,
        });
    }

    let full = (0..sub.line_count()).all(|l| sup.line(embedding.lines[l]).len() == sub.line(l).len());
    let ideal =
        (0..sub.point_count()).all(|p| sup.lines_through(embedding.points[p]).len() == sub.lines_through(p).len());
    Ok(SubQuadrangleRelation { is_sub, full, ideal })
}

/// Every proper full sub-quadrangle of `gq` with `t_sub + 1` lines per point,
/// as (substructure, embedding) pairs in canonical order.
pub fn find_full_subquadrangles(gq: &GeneralizedQuadrangle, t_sub: usize) -> Vec<(IncidenceStructure, Embedding)> {
    let mut found: BTreeSet<(Vec<usize>, Vec<usize>)> = BTreeSet::new();
    for p0 in 0..gq.point_count() {
        let through = gq.lines_through(p0);
        if through.len() < t_sub + 1 {
            continue;
        }
        let mut x = FixedBitSet::with_capacity(gq.point_count());
        x.insert(p0);
        let y = FixedBitSet::with_capacity(gq.line_count());
        grow(gq, p0, t_sub, x, y, &mut found);
    }
    found
        .into_iter()
        .filter(|(pts, _)| pts.len() < gq.point_count())
        .filter_map(|(pts, lines)| {
            let index_of = |p: usize| pts.binary_search(&p).expect("closed under lines");
            let sub_lines = lines
                .iter()
                .map(|&l| gq.line(l).iter().map(|&p| index_of(p)).collect())
                .collect();
            let sub = IncidenceStructure::new(pts.len(), sub_lines).ok()?;
            validate_gq(&sub).passed().then(|| {
                let line_map = sub
                    .lines()
                    .iter()
                    .map(|l| {
                        let host: Vec<usize> = l.iter().map(|&i| pts[i]).collect();
                        gq.line_index(&host).expect("host line")
                    })
                    .collect();
                (
                    sub,
                    Embedding {
                        points: pts,
                        lines: line_map,
                    },
                )
            })
        })
        .collect()
}

fn grow(
    gq: &GeneralizedQuadrangle,
    p0: usize,
    t_sub: usize,
    mut x: FixedBitSet,
    mut y: FixedBitSet,
    found: &mut BTreeSet<(Vec<usize>, Vec<usize>)>,
) {
    // Close: lines of Y are full, and a line joining two points of X is in Y.
    loop {
        let mut changed = false;
        for l in y.ones().collect::<Vec<_>>() {
            for &p in gq.line(l) {
                if p < p0 {
                    return;
                }
                changed |= !x.put(p);
            }
        }
        let pts: Vec<usize> = x.ones().collect();
        for (i, &a) in pts.iter().enumerate() {
            for &b in &pts[i + 1..] {
                if let Some(l) = gq.line_through(a, b) {
                    changed |= !y.put(l);
                }
            }
        }
        if !changed {
            break;
        }
    }
    let degree = |p: usize| gq.lines_through(p).iter().filter(|&&l| y.contains(l)).count();
    let mut deficient = None;
    for p in x.ones() {
        let d = degree(p);
        if d > t_sub + 1 {
            return;
        }
        if d < t_sub + 1 && deficient.is_none() {
            deficient = Some(p);
        }
    }
    match deficient {
        None => {
            found.insert((x.ones().collect(), y.ones().collect()));
        }
        Some(p) => {
            for &l in gq.lines_through(p) {
                if !y.contains(l) {
                    let mut y2 = y.clone();
                    y2.insert(l);
                    grow(gq, p0, t_sub, x.clone(), y2, found);
                }
            }
        }
    }
}
