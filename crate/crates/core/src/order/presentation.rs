//! Presentations: finite unions of points, dense intervals and dyadic
//! sequences, kept in a canonical normal form so that structural equality
//! is set equality.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::Rational;

/// An endpoint of a dense interval.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Bound {
    NegInf,
    Finite(Rational),
    PosInf,
}

impl Bound {
    pub fn finite(&self) -> Option<&Rational> {
        match self {
            Bound::Finite(x) => Some(x),
            _ => None,
        }
    }

    fn negate(&self) -> Bound {
        match self {
            Bound::NegInf => Bound::PosInf,
            Bound::PosInf => Bound::NegInf,
            Bound::Finite(x) => Bound::Finite(-x),
        }
    }

    fn lt_value(&self, x: &Rational) -> bool {
        match self {
            Bound::NegInf => true,
            Bound::Finite(b) => b < x,
            Bound::PosInf => false,
        }
    }

    fn gt_value(&self, x: &Rational) -> bool {
        match self {
            Bound::NegInf => false,
            Bound::Finite(b) => b > x,
            Bound::PosInf => true,
        }
    }
}

impl Ord for Bound {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Bound::Finite(a), Bound::Finite(b)) => a.cmp(b),
            (Bound::NegInf, Bound::NegInf) | (Bound::PosInf, Bound::PosInf) => Ordering::Equal,
            (Bound::NegInf, _) | (_, Bound::PosInf) => Ordering::Less,
            (_, Bound::NegInf) | (Bound::PosInf, _) => Ordering::Greater,
        }
    }
}

impl PartialOrd for Bound {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::NegInf => f.write_str("-inf"),
            Bound::PosInf => f.write_str("+inf"),
            Bound::Finite(x) => write!(f, "{x}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction {
    /// Members increase from `lo` towards the limit `hi`.
    Increasing,
    /// Members decrease from `hi` towards the limit `lo`.
    Decreasing,
}

/// `{ hi - (hi - lo) / 2^n : n >= 0 }` when increasing, or
/// `{ lo + (hi - lo) / 2^n : n >= 0 }` when decreasing.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DyadicSeq {
    pub lo: Rational,
    pub hi: Rational,
    pub direction: Direction,
    pub limit_included: bool,
}

fn pow2(n: u64) -> BigInt {
    BigInt::one() << n
}

impl DyadicSeq {
    pub fn anchor(&self) -> &Rational {
        match self.direction {
            Direction::Increasing => &self.lo,
            Direction::Decreasing => &self.hi,
        }
    }

    pub fn limit(&self) -> &Rational {
        match self.direction {
            Direction::Increasing => &self.hi,
            Direction::Decreasing => &self.lo,
        }
    }

    pub fn member(&self, n: u64) -> Rational {
        let step = (&self.hi - &self.lo) / Rational::from_integer(pow2(n));
        match self.direction {
            Direction::Increasing => &self.hi - step,
            Direction::Decreasing => &self.lo + step,
        }
    }

    /// The law extended to `n = -1`.
    pub fn predecessor(&self) -> Rational {
        let width = &self.hi - &self.lo;
        match self.direction {
            Direction::Increasing => &self.lo - width,
            Direction::Decreasing => &self.hi + width,
        }
    }

    /// `n` with `member(n) == x`, if any.
    pub fn index_of(&self, x: &Rational) -> Option<u64> {
        let gap = match self.direction {
            Direction::Increasing => &self.hi - x,
            Direction::Decreasing => x - &self.lo,
        };
        if !gap.is_positive() {
            return None;
        }
        let ratio = (&self.hi - &self.lo) / gap;
        if !ratio.is_integer() {
            return None;
        }
        let digits = ratio.to_integer().to_biguint()?;
        (digits.count_ones() == 1).then(|| digits.trailing_zeros().unwrap_or(0))
    }

    pub fn contains(&self, x: &Rational) -> bool {
        (self.limit_included && x == self.limit()) || self.index_of(x).is_some()
    }

    /// Whether some member (or the included limit) lies in `(lo, hi)`.
    pub fn meets_open(&self, lo: &Bound, hi: &Bound) -> bool {
        if self.direction == Direction::Decreasing {
            return self.negate().meets_open(&hi.negate(), &lo.negate());
        }
        if self.limit_included && lo.lt_value(&self.hi) && hi.gt_value(&self.hi) {
            return true;
        }
        let first = match lo {
            Bound::Finite(x) if x >= &self.lo => {
                if x >= &self.hi {
                    return false;
                }
                let mut n = self.index_below_or_at(x);
                while &self.member(n) <= x {
                    n += 1;
                }
                self.member(n)
            }
            Bound::PosInf => return false,
            _ => self.lo.clone(),
        };
        hi.gt_value(&first)
    }

    /// Largest `n` with `member(n) <= x`, for increasing sequences and
    /// `lo <= x < hi`.
    fn index_below_or_at(&self, x: &Rational) -> u64 {
        debug_assert_eq!(self.direction, Direction::Increasing);
        let mut n = 0;
        while &self.member(n + 1) <= x {
            n += 1;
        }
        n
    }

    /// Whether `x` lies in the half-open hull `[anchor, limit)` (mirrored
    /// when decreasing).
    pub fn hull_contains(&self, x: &Rational) -> bool {
        match self.direction {
            Direction::Increasing => &self.lo <= x && x < &self.hi,
            Direction::Decreasing => &self.lo < x && x <= &self.hi,
        }
    }

    /// Whether the hull meets the open interval `(lo, hi)`.
    fn hull_meets_open(&self, lo: &Bound, hi: &Bound) -> bool {
        lo.lt_value(&self.hi) && hi.gt_value(&self.lo)
    }

    fn negate(&self) -> DyadicSeq {
        DyadicSeq {
            lo: -&self.hi,
            hi: -&self.lo,
            direction: match self.direction {
                Direction::Increasing => Direction::Decreasing,
                Direction::Decreasing => Direction::Increasing,
            },
            limit_included: self.limit_included,
        }
    }

    fn with_anchor(&self, anchor: Rational) -> DyadicSeq {
        let mut s = self.clone();
        match s.direction {
            Direction::Increasing => s.lo = anchor,
            Direction::Decreasing => s.hi = anchor,
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Atom {
    Point(Rational),
    Interval {
        lo: Bound,
        hi: Bound,
        lo_closed: bool,
        hi_closed: bool,
    },
    Seq(DyadicSeq),
}

impl Atom {
    pub fn open(lo: Bound, hi: Bound) -> Atom {
        Atom::Interval {
            lo,
            hi,
            lo_closed: false,
            hi_closed: false,
        }
    }

    pub fn closed(lo: Rational, hi: Rational) -> Atom {
        Atom::Interval {
            lo: Bound::Finite(lo),
            hi: Bound::Finite(hi),
            lo_closed: true,
            hi_closed: true,
        }
    }

    pub fn contains(&self, x: &Rational) -> bool {
        match self {
            Atom::Point(p) => p == x,
            Atom::Interval {
                lo,
                hi,
                lo_closed,
                hi_closed,
            } => {
                let above = lo.lt_value(x) || (*lo_closed && lo.finite() == Some(x));
                let below = hi.gt_value(x) || (*hi_closed && hi.finite() == Some(x));
                above && below
            }
            Atom::Seq(s) => s.contains(x),
        }
    }

    pub fn infimum(&self) -> Bound {
        match self {
            Atom::Point(p) => Bound::Finite(p.clone()),
            Atom::Interval { lo, .. } => lo.clone(),
            Atom::Seq(s) => Bound::Finite(s.lo.clone()),
        }
    }

    fn negate(&self) -> Atom {
        match self {
            Atom::Point(p) => Atom::Point(-p),
            Atom::Interval {
                lo,
                hi,
                lo_closed,
                hi_closed,
            } => Atom::Interval {
                lo: hi.negate(),
                hi: lo.negate(),
                lo_closed: *hi_closed,
                hi_closed: *lo_closed,
            },
            Atom::Seq(s) => Atom::Seq(s.negate()),
        }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let oc = |c: bool| if c { "c" } else { "o" };
        match self {
            Atom::Point(p) => write!(f, "pt({p})"),
            Atom::Interval {
                lo,
                hi,
                lo_closed,
                hi_closed,
            } => write!(f, "iv({lo},{hi},{},{})", oc(*lo_closed), oc(*hi_closed)),
            Atom::Seq(s) => write!(
                f,
                "seq({},{},{},{})",
                s.lo,
                s.hi,
                match s.direction {
                    Direction::Increasing => "inc",
                    Direction::Decreasing => "dec",
                },
                if s.limit_included { "incl" } else { "excl" }
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error("interval {0} is empty")]
    EmptyInterval(String),
    #[error("interval {0} is closed at an infinite end")]
    ClosedAtInfinity(String),
    #[error("sequence {0} needs lo < hi")]
    SeqBounds(String),
    #[error("atoms {0} and {1} overlap")]
    Overlap(String, String),
    #[error("union is not expressible: {0}")]
    Inexpressible(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("column {column}: {message}")]
pub struct ParsePresentationError {
    /// 1-based character column.
    pub column: usize,
    pub message: String,
}

/// A finite union of atoms in canonical form.
///
/// The canonical form has pairwise disjoint atoms sorted by infimum, with
/// every convex union of points and intervals merged, limit points folded
/// into the sequence approaching them (the increasing one on ties) and each
/// sequence extended backwards over any point on its law.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Presentation {
    atoms: Vec<Atom>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mode {
    Strict,
    Lenient,
}

impl Presentation {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn rationals() -> Self {
        Self {
            atoms: vec![Atom::open(Bound::NegInf, Bound::PosInf)],
        }
    }

    /// Normalizes `atoms`, rejecting any two that share an element.
    pub fn new(atoms: Vec<Atom>) -> Result<Self, PresentationError> {
        normalize(atoms, Mode::Strict)
    }

    /// Normalizes the union of possibly overlapping atoms.
    pub fn from_union(atoms: Vec<Atom>) -> Result<Self, PresentationError> {
        normalize(atoms, Mode::Lenient)
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn is_everything(&self) -> bool {
        *self == Self::rationals()
    }

    pub fn contains(&self, x: &Rational) -> bool {
        self.atoms.iter().any(|a| a.contains(x))
    }

    pub fn union(&self, other: &Presentation) -> Result<Self, PresentationError> {
        Self::from_union(self.atoms.iter().chain(&other.atoms).cloned().collect())
    }

    pub fn with_point(&self, x: Rational) -> Result<Self, PresentationError> {
        let mut atoms = self.atoms.clone();
        atoms.push(Atom::Point(x));
        Self::from_union(atoms)
    }

    /// Image under `x -> -x`.
    pub fn negate(&self) -> Self {
        normalize(self.atoms.iter().map(Atom::negate).collect(), Mode::Strict).expect("negation preserves disjointness")
    }

    /// Whether some member lies in the open interval `(lo, hi)`.
    pub fn meets_open(&self, lo: &Bound, hi: &Bound) -> bool {
        self.atoms.iter().any(|a| match a {
            Atom::Point(x) => lo.lt_value(x) && hi.gt_value(x),
            Atom::Interval { lo: alo, hi: ahi, .. } => alo < hi && lo < ahi,
            Atom::Seq(s) => s.meets_open(lo, hi),
        })
    }

    /// Finite breakpoints: points, finite interval ends, sequence anchors
    /// and limits. Ascending and deduplicated.
    pub fn breakpoints(&self) -> Vec<Rational> {
        let mut out = Vec::new();
        for a in &self.atoms {
            match a {
                Atom::Point(p) => out.push(p.clone()),
                Atom::Interval { lo, hi, .. } => {
                    out.extend(lo.finite().cloned());
                    out.extend(hi.finite().cloned());
                }
                Atom::Seq(s) => {
                    out.push(s.lo.clone());
                    out.push(s.hi.clone());
                }
            }
        }
        out.sort();
        out.dedup();
        out
    }

    /// Exact inclusion test.
    pub fn is_subset_of(&self, other: &Presentation) -> bool {
        self.atoms.iter().all(|a| other.covers_atom(a))
    }

    pub fn is_strict_subset_of(&self, other: &Presentation) -> bool {
        self != other && self.is_subset_of(other)
    }

    fn covers_atom(&self, atom: &Atom) -> bool {
        match atom {
            Atom::Point(p) => self.contains(p),
            Atom::Interval { .. } => self.atoms.iter().any(|b| interval_within(atom, b)),
            Atom::Seq(s) => self.covers_seq(s),
        }
    }

    fn covers_seq(&self, s: &DyadicSeq) -> bool {
        if s.limit_included && !self.contains(s.limit()) {
            return false;
        }
        // Past `cut` the tail lies inside a single atom of `self`.
        let tail = self.atoms.iter().find_map(|b| match b {
            Atom::Seq(t) if t.direction == s.direction && t.limit() == s.limit() => {
                let n = s.index_of(t.anchor());
                let m = t.index_of(s.anchor());
                match (n, m) {
                    (Some(n), _) => Some(n),
                    (None, Some(_)) => Some(0),
                    _ => None,
                }
            }
            Atom::Interval { .. } => interval_tail_cut(s, b),
            _ => None,
        });
        let Some(cut) = tail else {
            return false;
        };
        (0..cut).all(|n| self.contains(&s.member(n)))
    }
}

/// The first index from which every member of `s` lies in interval `b`.
fn interval_tail_cut(s: &DyadicSeq, b: &Atom) -> Option<u64> {
    let Atom::Interval { lo, hi, .. } = b else {
        return None;
    };
    let limit = s.limit();
    // The interval must contain a punctured neighbourhood of the limit on
    // the side the sequence approaches from.
    let reaches = match s.direction {
        Direction::Increasing => lo.lt_value(limit) && !hi.lt_value(limit),
        Direction::Decreasing => hi.gt_value(limit) && !lo.gt_value(limit),
    };
    if !reaches {
        return None;
    }
    (0..).find(|&n| b.contains(&s.member(n)))
}

/// Whether interval `a` lies inside atom `b`.
fn interval_within(a: &Atom, b: &Atom) -> bool {
    let (
        Atom::Interval {
            lo: alo,
            hi: ahi,
            lo_closed: alc,
            hi_closed: ahc,
        },
        Atom::Interval {
            lo: blo,
            hi: bhi,
            lo_closed: blc,
            hi_closed: bhc,
        },
    ) = (a, b)
    else {
        return false;
    };
    let lo_ok = match blo.cmp(alo) {
        Ordering::Less => true,
        Ordering::Equal => *blc || !*alc,
        Ordering::Greater => false,
    };
    let hi_ok = match bhi.cmp(ahi) {
        Ordering::Greater => true,
        Ordering::Equal => *bhc || !*ahc,
        Ordering::Less => false,
    };
    lo_ok && hi_ok
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.atoms.is_empty() {
            return f.write_str("empty");
        }
        for (i, a) in self.atoms.iter().enumerate() {
            if i > 0 {
                f.write_str(" U ")?;
            }
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Normalization

/// A convex piece made of points and intervals, as `(lo, lo_closed, hi,
/// hi_closed)`.
#[derive(Clone, Debug)]
struct Convex {
    lo: Bound,
    lo_closed: bool,
    hi: Bound,
    hi_closed: bool,
}

impl Convex {
    fn from_atom(a: &Atom) -> Option<Convex> {
        match a {
            Atom::Point(p) => Some(Convex {
                lo: Bound::Finite(p.clone()),
                lo_closed: true,
                hi: Bound::Finite(p.clone()),
                hi_closed: true,
            }),
            Atom::Interval {
                lo,
                hi,
                lo_closed,
                hi_closed,
            } => Some(Convex {
                lo: lo.clone(),
                lo_closed: *lo_closed,
                hi: hi.clone(),
                hi_closed: *hi_closed,
            }),
            Atom::Seq(_) => None,
        }
    }

    fn into_atom(self) -> Atom {
        match (&self.lo, &self.hi) {
            (Bound::Finite(a), Bound::Finite(b)) if a == b => Atom::Point(a.clone()),
            _ => Atom::Interval {
                lo: self.lo,
                hi: self.hi,
                lo_closed: self.lo_closed,
                hi_closed: self.hi_closed,
            },
        }
    }

    fn is_point(&self) -> bool {
        matches!((&self.lo, &self.hi), (Bound::Finite(a), Bound::Finite(b)) if a == b)
    }

    fn contains(&self, x: &Rational) -> bool {
        self.clone().into_atom().contains(x)
    }

    /// Whether `self` (starting no later than `next`) shares an element with
    /// `next`.
    fn overlaps_next(&self, next: &Convex) -> bool {
        match self.hi.cmp(&next.lo) {
            Ordering::Greater => true,
            Ordering::Equal => self.hi_closed && next.lo_closed,
            Ordering::Less => false,
        }
    }

    /// Whether the union with `next` is convex.
    fn joins_next(&self, next: &Convex) -> bool {
        match self.hi.cmp(&next.lo) {
            Ordering::Greater => true,
            Ordering::Equal => self.hi_closed || next.lo_closed,
            Ordering::Less => false,
        }
    }

    fn absorb(&mut self, next: Convex) {
        match self.hi.cmp(&next.hi) {
            Ordering::Less => {
                self.hi = next.hi;
                self.hi_closed = next.hi_closed;
            }
            Ordering::Equal => self.hi_closed |= next.hi_closed,
            Ordering::Greater => {}
        }
    }

    /// Whether `self` shares an element with the open interval `(lo, hi)`.
    fn meets_open(&self, lo: &Rational, hi: &Rational) -> bool {
        if self.is_point() {
            let p = self.lo.finite().expect("point");
            return lo < p && p < hi;
        }
        self.lo.lt_value(hi) && self.hi.gt_value(lo)
    }
}

fn validate(a: &Atom) -> Result<(), PresentationError> {
    match a {
        Atom::Point(_) => Ok(()),
        Atom::Interval {
            lo,
            hi,
            lo_closed,
            hi_closed,
        } => {
            if (*lo_closed && lo.finite().is_none()) || (*hi_closed && hi.finite().is_none()) {
                return Err(PresentationError::ClosedAtInfinity(a.to_string()));
            }
            if matches!(lo, Bound::PosInf) || matches!(hi, Bound::NegInf) {
                return Err(PresentationError::EmptyInterval(a.to_string()));
            }
            match lo.cmp(hi) {
                Ordering::Less => Ok(()),
                Ordering::Equal if *lo_closed && *hi_closed => Ok(()),
                _ => Err(PresentationError::EmptyInterval(a.to_string())),
            }
        }
        Atom::Seq(s) => {
            if s.lo < s.hi {
                Ok(())
            } else {
                Err(PresentationError::SeqBounds(a.to_string()))
            }
        }
    }
}

fn normalize(atoms: Vec<Atom>, mode: Mode) -> Result<Presentation, PresentationError> {
    atoms.iter().try_for_each(validate)?;

    let mut convex = Vec::new();
    let mut seqs: Vec<DyadicSeq> = Vec::new();
    for a in atoms {
        match a {
            Atom::Seq(mut s) => {
                if std::mem::take(&mut s.limit_included) {
                    convex.push(Convex::from_atom(&Atom::Point(s.limit().clone())).expect("point"));
                }
                seqs.push(s);
            }
            other => convex.push(Convex::from_atom(&other).expect("convex atom")),
        }
    }

    // Points and intervals: convex union.
    convex.sort_by(|a, b| a.lo.cmp(&b.lo).then(b.lo_closed.cmp(&a.lo_closed)));
    let mut merged: Vec<Convex> = Vec::new();
    for c in convex {
        if let Some(last) = merged.last_mut() {
            if mode == Mode::Strict && last.overlaps_next(&c) {
                return Err(PresentationError::Overlap(
                    last.clone().into_atom().to_string(),
                    c.into_atom().to_string(),
                ));
            }
            if last.joins_next(&c) {
                last.absorb(c);
                continue;
            }
        }
        merged.push(c);
    }

    // Sequences against each other.
    seqs.sort_by(|a, b| a.lo.cmp(&b.lo).then(a.hi.cmp(&b.hi)));
    let mut kept: Vec<DyadicSeq> = Vec::new();
    for s in seqs {
        if let Some(t) = kept.iter().position(|t| {
            t.hull_meets_open(&Bound::Finite(s.lo.clone()), &Bound::Finite(s.hi.clone()))
                || s.hull_contains(t.anchor())
                || t.hull_contains(s.anchor())
        }) {
            let other = kept[t].clone();
            if mode == Mode::Lenient && other.direction == s.direction && other.limit() == s.limit() {
                if s.index_of(other.anchor()).is_some() {
                    kept[t] = s;
                    continue;
                }
                if other.index_of(s.anchor()).is_some() {
                    continue;
                }
            }
            return Err(overlap_or_inexpressible(mode, Atom::Seq(other), Atom::Seq(s)));
        }
        kept.push(s);
    }

    // Sequences against points and intervals.
    let mut convex = Vec::new();
    'pieces: for c in merged {
        for s in &kept {
            if c.is_point() {
                let p = c.lo.finite().expect("point");
                if s.index_of(p).is_some() {
                    if mode == Mode::Strict {
                        return Err(PresentationError::Overlap(
                            Atom::Seq(s.clone()).to_string(),
                            c.into_atom().to_string(),
                        ));
                    }
                    continue 'pieces;
                }
            } else if hull_meets_convex(s, &c) {
                return Err(overlap_or_inexpressible(mode, Atom::Seq(s.clone()), c.into_atom()));
            }
        }
        convex.push(c);
    }

    // Lenient unions may swallow a whole sequence into an interval; that
    // case was reported above, so every sequence survives from here.
    let mut seqs = kept;
    extend_backwards(&mut seqs, &mut convex);

    // Fold limit points.
    let mut points_left = Vec::new();
    for c in convex {
        if c.is_point() {
            let p = c.lo.finite().expect("point").clone();
            let target = seqs
                .iter()
                .position(|s| s.direction == Direction::Increasing && s.hi == p)
                .or_else(|| {
                    seqs.iter()
                        .position(|s| s.direction == Direction::Decreasing && s.lo == p)
                });
            if let Some(i) = target {
                seqs[i].limit_included = true;
                continue;
            }
        }
        points_left.push(c);
    }

    let mut atoms: Vec<Atom> = points_left
        .into_iter()
        .map(Convex::into_atom)
        .chain(seqs.into_iter().map(Atom::Seq))
        .collect();
    atoms.sort_by(|a, b| {
        a.infimum()
            .cmp(&b.infimum())
            .then_with(|| a.to_string().cmp(&b.to_string()))
    });
    Ok(Presentation { atoms })
}

fn overlap_or_inexpressible(mode: Mode, a: Atom, b: Atom) -> PresentationError {
    match mode {
        Mode::Strict => PresentationError::Overlap(a.to_string(), b.to_string()),
        Mode::Lenient => PresentationError::Inexpressible(format!("{a} meets {b}")),
    }
}

fn hull_meets_convex(s: &DyadicSeq, c: &Convex) -> bool {
    let (lo, hi) = (&s.lo, &s.hi);
    // Hull is [lo, hi) when increasing, (lo, hi] when decreasing.
    let closed_end = s.anchor();
    c.contains(closed_end) || c.meets_open(lo, hi)
}

/// Pulls points (or a closed interval end) lying on a sequence's law just
/// before its anchor into the sequence.
fn extend_backwards(seqs: &mut [DyadicSeq], convex: &mut Vec<Convex>) {
    for i in 0..seqs.len() {
        loop {
            let s = &seqs[i];
            let pred = s.predecessor();
            let (gap_lo, gap_hi) = match s.direction {
                Direction::Increasing => (pred.clone(), s.lo.clone()),
                Direction::Decreasing => (s.hi.clone(), pred.clone()),
            };
            let blocked = convex.iter().any(|c| !c.is_point() && c.meets_open(&gap_lo, &gap_hi))
                || seqs.iter().enumerate().any(|(j, t)| {
                    j != i && t.hull_meets_open(&Bound::Finite(gap_lo.clone()), &Bound::Finite(gap_hi.clone()))
                });
            if blocked {
                break;
            }
            let point = convex.iter().position(|c| c.is_point() && c.lo.finite() == Some(&pred));
            if let Some(k) = point {
                convex.remove(k);
                seqs[i] = seqs[i].with_anchor(pred);
                continue;
            }
            let end = convex.iter().position(|c| match s.direction {
                Direction::Increasing => c.hi_closed && c.hi.finite() == Some(&pred),
                Direction::Decreasing => c.lo_closed && c.lo.finite() == Some(&pred),
            });
            if let Some(k) = end {
                match s.direction {
                    Direction::Increasing => convex[k].hi_closed = false,
                    Direction::Decreasing => convex[k].lo_closed = false,
                }
                seqs[i] = seqs[i].with_anchor(pred);
                continue;
            }
            break;
        }
    }
}

// ---------------------------------------------------------------------------
// Parsing

/// Parses `p/q` or an integer, with an optional sign.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let body = text.strip_prefix(['-', '+']).unwrap_or(text);
    let valid = match body.split_once('/') {
        Some((n, d)) => is_digits(n) && is_digits(d),
        None => is_digits(body),
    };
    if !valid {
        return None;
    }
    let text = text.strip_prefix('+').unwrap_or(text);
    match text.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n).ok()?;
            let d = BigInt::from_str(d).ok()?;
            (!d.is_zero()).then(|| Rational::new(n, d))
        }
        None => BigInt::from_str(text).ok().map(Rational::from_integer),
    }
}

fn is_digits(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit())
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Word(String),
    Open,
    Close,
    Comma,
    Union,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>, ParsePresentationError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        match c {
            c if c.is_whitespace() => i += 1,
            '(' => {
                out.push((col, Token::Open));
                i += 1;
            }
            ')' => {
                out.push((col, Token::Close));
                i += 1;
            }
            ',' => {
                out.push((col, Token::Comma));
                i += 1;
            }
            '∪' => {
                out.push((col, Token::Union));
                i += 1;
            }
            c if c.is_ascii_alphanumeric() || matches!(c, '-' | '+' | '/') => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || matches!(chars[i], '-' | '+' | '/')) {
                    i += 1;
                }
                let word: String = chars[start..i].iter().collect();
                if word == "U" {
                    out.push((col, Token::Union));
                } else {
                    out.push((col, Token::Word(word)));
                }
            }
            other => {
                return Err(ParsePresentationError {
                    column: col,
                    message: format!("unexpected character {other:?}"),
                })
            }
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn err<T>(&self, message: impl Into<String>) -> Result<T, ParsePresentationError> {
        let column = self.tokens.get(self.pos).map_or(self.end, |t| t.0);
        Err(ParsePresentationError {
            column,
            message: message.into(),
        })
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).map(|t| t.1.clone());
        self.pos += 1;
        t
    }

    fn expect(&mut self, want: Token, what: &str) -> Result<(), ParsePresentationError> {
        if self.tokens.get(self.pos).map(|t| &t.1) == Some(&want) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected {what}"))
        }
    }

    fn word(&mut self, what: &str) -> Result<String, ParsePresentationError> {
        match self.tokens.get(self.pos) {
            Some((_, Token::Word(w))) => {
                let w = w.clone();
                self.pos += 1;
                Ok(w)
            }
            _ => self.err(format!("expected {what}")),
        }
    }

    fn rational(&mut self) -> Result<Rational, ParsePresentationError> {
        let w = self.word("a rational")?;
        match parse_rational(&w) {
            Some(r) => Ok(r),
            None => {
                self.pos -= 1;
                self.err(format!("malformed rational {w:?}"))
            }
        }
    }

    fn bound(&mut self) -> Result<Bound, ParsePresentationError> {
        let w = self.word("a bound")?;
        match w.as_str() {
            "-inf" => Ok(Bound::NegInf),
            "+inf" | "inf" => Ok(Bound::PosInf),
            _ => match parse_rational(&w) {
                Some(r) => Ok(Bound::Finite(r)),
                None => {
                    self.pos -= 1;
                    self.err(format!("malformed bound {w:?}"))
                }
            },
        }
    }

    fn choice(&mut self, options: [&str; 2]) -> Result<bool, ParsePresentationError> {
        let w = self.word(&format!("{} or {}", options[0], options[1]))?;
        if w == options[0] {
            Ok(true)
        } else if w == options[1] {
            Ok(false)
        } else {
            self.pos -= 1;
            self.err(format!("expected {} or {}", options[0], options[1]))
        }
    }

    fn atom(&mut self) -> Result<Option<Atom>, ParsePresentationError> {
        let kind = self.word("pt, iv, seq or empty")?;
        if kind == "empty" {
            return Ok(None);
        }
        if !matches!(kind.as_str(), "pt" | "iv" | "seq") {
            self.pos -= 1;
            return self.err(format!("unknown atom {kind:?}"));
        }
        self.expect(Token::Open, "'('")?;
        let atom = match kind.as_str() {
            "pt" => Atom::Point(self.rational()?),
            "iv" => {
                let lo = self.bound()?;
                self.expect(Token::Comma, "','")?;
                let hi = self.bound()?;
                self.expect(Token::Comma, "','")?;
                let lo_closed = !self.choice(["o", "c"])?;
                self.expect(Token::Comma, "','")?;
                let hi_closed = !self.choice(["o", "c"])?;
                Atom::Interval {
                    lo,
                    hi,
                    lo_closed,
                    hi_closed,
                }
            }
            _ => {
                let lo = self.rational()?;
                self.expect(Token::Comma, "','")?;
                let hi = self.rational()?;
                self.expect(Token::Comma, "','")?;
                let inc = self.choice(["inc", "dec"])?;
                self.expect(Token::Comma, "','")?;
                let limit_included = self.choice(["incl", "excl"])?;
                Atom::Seq(DyadicSeq {
                    lo,
                    hi,
                    direction: if inc {
                        Direction::Increasing
                    } else {
                        Direction::Decreasing
                    },
                    limit_included,
                })
            }
        };
        self.expect(Token::Close, "')'")?;
        Ok(Some(atom))
    }
}

impl FromStr for Presentation {
    type Err = ParsePresentationError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let tokens = tokenize(text)?;
        let mut p = Parser {
            end: text.chars().count() + 1,
            tokens,
            pos: 0,
        };
        let mut atoms = Vec::new();
        loop {
            atoms.extend(p.atom()?);
            match p.next() {
                None => break,
                Some(Token::Union) => continue,
                Some(_) => {
                    p.pos -= 1;
                    return p.err("expected 'U' or end of input");
                }
            }
        }
        Presentation::new(atoms).map_err(|e| ParsePresentationError {
            column: 1,
            message: e.to_string(),
        })
    }
}
