//! Exact images of presentations under piecewise-linear automorphisms.

use thiserror::Error;

use super::automorphism::OrderAutomorphism;
use super::presentation::{Atom, Bound, Direction, DyadicSeq, Presentation, PresentationError};
use crate::Rational;

/// Members split off a sequence before its affine tail; past this the
/// image is reported as inexpressible.
pub const MAX_PREFIX: u64 = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ImageError {
    #[error("sequence {0} needs more than {MAX_PREFIX} explicit members before its tail")]
    Inexpressible(String),
    #[error(transparent)]
    Presentation(#[from] PresentationError),
}

/// `α(P)`, normalized.
///
/// Points and interval ends map directly. A sequence keeps finitely many
/// members as points; its tail lies in a single linear piece of `α`, and
/// the affine image of a dyadic sequence is again one.
pub fn image_presentation(alpha: &OrderAutomorphism, p: &Presentation) -> Result<Presentation, ImageError> {
    let xs: Vec<&Rational> = alpha.anchors().iter().map(|a| &a.0).collect();
    let map_bound = |b: &Bound| match b {
        Bound::Finite(x) => Bound::Finite(alpha.apply(x)),
        other => other.clone(),
    };
    let mut atoms = Vec::with_capacity(p.atoms().len());
    for atom in p.atoms() {
        match atom {
            Atom::Point(x) => atoms.push(Atom::Point(alpha.apply(x))),
            Atom::Interval {
                lo,
                hi,
                lo_closed,
                hi_closed,
            } => atoms.push(Atom::Interval {
                lo: map_bound(lo),
                hi: map_bound(hi),
                lo_closed: *lo_closed,
                hi_closed: *hi_closed,
            }),
            Atom::Seq(s) => map_seq(alpha, &xs, s, &mut atoms)?,
        }
    }
    Ok(Presentation::new(atoms)?)
}

fn map_seq(
    alpha: &OrderAutomorphism,
    breaks: &[&Rational],
    s: &DyadicSeq,
    out: &mut Vec<Atom>,
) -> Result<(), ImageError> {
    let limit = s.limit();
    // The breakpoint nearest the limit on the approach side; past it α is
    // affine up to the limit.
    let last_break = match s.direction {
        Direction::Increasing => breaks.iter().copied().filter(|x| *x < limit).max(),
        Direction::Decreasing => breaks.iter().copied().filter(|x| *x > limit).min(),
    };
    let in_tail = |x: &Rational| match (s.direction, last_break) {
        (_, None) => true,
        (Direction::Increasing, Some(b)) => x >= b,
        (Direction::Decreasing, Some(b)) => x <= b,
    };
    let mut n = 0;
    while !in_tail(&s.member(n)) {
        if n >= MAX_PREFIX {
            return Err(ImageError::Inexpressible(Atom::Seq(s.clone()).to_string()));
        }
        out.push(Atom::Point(alpha.apply(&s.member(n))));
        n += 1;
    }
    let start = alpha.apply(&s.member(n));
    let end = alpha.apply(limit);
    let (lo, hi) = match s.direction {
        Direction::Increasing => (start, end),
        Direction::Decreasing => (end, start),
    };
    out.push(Atom::Seq(DyadicSeq {
        lo,
        hi,
        direction: s.direction,
        limit_included: s.limit_included,
    }));
    Ok(())
}
