//! The two class decompositions of a presented set.
//!
//! Under `~`, two members are equivalent when only finitely many members lie
//! between them. Under `≍`, two rationals are related when every rational
//! strictly between them is a member.

use std::fmt;

use super::presentation::{Atom, Bound, Direction, DyadicSeq, Presentation};
use crate::Rational;

/// What an open piece of the line holds.
#[derive(Clone, Debug)]
enum Content {
    Full,
    Empty,
    /// The interior of a sequence hull: members and gap points belong to
    /// the set, the rest of the gaps do not.
    Seq(DyadicSeq),
}

#[derive(Clone, Debug)]
enum Piece {
    Point(Rational, bool),
    Open(Bound, Bound, Content),
}

/// Q cut at the breakpoints of `p`: alternating open pieces and points,
/// starting and ending with an open piece.
struct LineModel {
    breakpoints: Vec<Rational>,
    pieces: Vec<Piece>,
}

impl LineModel {
    fn new(p: &Presentation) -> Self {
        let seqs: Vec<&DyadicSeq> = p
            .atoms()
            .iter()
            .filter_map(|a| match a {
                Atom::Seq(s) => Some(s),
                _ => None,
            })
            .collect();
        let in_gap = |x: &Rational| seqs.iter().any(|s| &s.lo < x && x < &s.hi);
        let breakpoints: Vec<Rational> = p.breakpoints().into_iter().filter(|x| !in_gap(x)).collect();

        let mut pieces = Vec::with_capacity(2 * breakpoints.len() + 1);
        let bounds: Vec<Bound> = std::iter::once(Bound::NegInf)
            .chain(breakpoints.iter().cloned().map(Bound::Finite))
            .chain(std::iter::once(Bound::PosInf))
            .collect();
        for (i, w) in bounds.windows(2).enumerate() {
            let content = open_content(p, &seqs, &w[0], &w[1]);
            pieces.push(Piece::Open(w[0].clone(), w[1].clone(), content));
            if let Some(x) = breakpoints.get(i) {
                pieces.push(Piece::Point(x.clone(), p.contains(x)));
            }
        }
        Self { breakpoints, pieces }
    }
}

fn sample(lo: &Bound, hi: &Bound) -> Rational {
    let one = Rational::from_integer(1.into());
    match (lo, hi) {
        (Bound::Finite(a), Bound::Finite(b)) => (a + b) / Rational::from_integer(2.into()),
        (Bound::Finite(a), _) => a + one,
        (_, Bound::Finite(b)) => b - one,
        _ => Rational::from_integer(0.into()),
    }
}

fn open_content(p: &Presentation, seqs: &[&DyadicSeq], lo: &Bound, hi: &Bound) -> Content {
    let m = sample(lo, hi);
    let full = p
        .atoms()
        .iter()
        .any(|a| matches!(a, Atom::Interval { .. }) && a.contains(&m));
    if full {
        return Content::Full;
    }
    match seqs.iter().find(|s| s.lo < m && m < s.hi) {
        Some(s) => Content::Seq((*s).clone()),
        None => Content::Empty,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ClassKind {
    Singleton,
    /// `k >= 2` members, each with an immediate neighbour in the class.
    FiniteDiscrete(usize),
    InfiniteDiscrete,
    /// A dense region whose members are all singleton classes.
    DenseSingletons,
}

impl fmt::Display for ClassKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassKind::Singleton => f.write_str("singleton"),
            ClassKind::FiniteDiscrete(k) => write!(f, "finite-discrete({k})"),
            ClassKind::InfiniteDiscrete => f.write_str("infinite-discrete"),
            ClassKind::DenseSingletons => f.write_str("dense-singletons"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimClass {
    pub kind: ClassKind,
    /// Infimum and supremum of the class.
    pub lo: Bound,
    pub hi: Bound,
    /// Exact members, when expressible. Complement regions inside a
    /// sequence hull are not.
    pub members: Option<Presentation>,
}

impl SimClass {
    pub fn is_singleton(&self) -> bool {
        matches!(self.kind, ClassKind::Singleton | ClassKind::DenseSingletons)
    }
}

/// `~` classes of either a set or its complement, in increasing order.
#[derive(Clone, Debug)]
pub struct SimDecomposition {
    pub classes: Vec<SimClass>,
    set: Presentation,
    complement: bool,
    model_breakpoints: Vec<Rational>,
    piece_class: Vec<Option<usize>>,
}

impl SimDecomposition {
    pub fn is_complement(&self) -> bool {
        self.complement
    }

    fn in_side(&self, x: &Rational) -> bool {
        self.set.contains(x) != self.complement
    }

    /// Index of the class holding `x`, for `x` on this side.
    pub fn class_of(&self, x: &Rational) -> Option<usize> {
        if !self.in_side(x) {
            return None;
        }
        let j = self.model_breakpoints.partition_point(|b| b < x);
        let piece = if self.model_breakpoints.get(j) == Some(x) {
            2 * j + 1
        } else {
            2 * j
        };
        self.piece_class[piece]
    }

    /// The relation itself, read off the partition.
    pub fn related(&self, a: &Rational, b: &Rational) -> bool {
        match (self.class_of(a), self.class_of(b)) {
            (Some(i), Some(j)) => a == b || (i == j && self.classes[i].kind != ClassKind::DenseSingletons),
            _ => false,
        }
    }

    pub fn non_singletons(&self) -> impl Iterator<Item = &SimClass> {
        self.classes.iter().filter(|c| !c.is_singleton())
    }
}

struct Unit {
    piece: usize,
    join_left: bool,
    join_right: bool,
    kind: UnitKind,
}

enum UnitKind {
    Point(Rational),
    Chain(DyadicSeq),
    Dense(Bound, Bound, bool),
}

/// `~` classes of `p` itself.
pub fn sim_classes(p: &Presentation) -> SimDecomposition {
    decompose(p, false)
}

/// `~` classes of the complement of `p` in Q.
pub fn sim_classes_of_complement(p: &Presentation) -> SimDecomposition {
    decompose(p, true)
}

fn decompose(p: &Presentation, complement: bool) -> SimDecomposition {
    let model = LineModel::new(p);
    let mut units = Vec::new();
    for (i, piece) in model.pieces.iter().enumerate() {
        let unit = match piece {
            Piece::Point(x, inside) if *inside != complement => Some((true, true, UnitKind::Point(x.clone()))),
            Piece::Point(..) => None,
            Piece::Open(lo, hi, content) => match (content, complement) {
                (Content::Full, false) | (Content::Empty, true) => {
                    Some((false, false, UnitKind::Dense(lo.clone(), hi.clone(), true)))
                }
                (Content::Seq(_), true) => Some((false, false, UnitKind::Dense(lo.clone(), hi.clone(), false))),
                (Content::Seq(s), false) => {
                    let inc = s.direction == Direction::Increasing;
                    Some((inc, !inc, UnitKind::Chain(s.clone())))
                }
                _ => None,
            },
        };
        if let Some((join_left, join_right, kind)) = unit {
            units.push(Unit {
                piece: i,
                join_left,
                join_right,
                kind,
            });
        }
    }

    let mut runs: Vec<Vec<Unit>> = Vec::new();
    for u in units {
        match runs.last_mut() {
            Some(run) if run.last().is_some_and(|prev| prev.join_right) && u.join_left => run.push(u),
            _ => runs.push(vec![u]),
        }
    }

    let mut piece_class = vec![None; model.pieces.len()];
    let classes = runs
        .into_iter()
        .enumerate()
        .map(|(ci, run)| {
            run.iter().for_each(|u| piece_class[u.piece] = Some(ci));
            build_class(p, &run)
        })
        .collect();
    SimDecomposition {
        classes,
        set: p.clone(),
        complement,
        model_breakpoints: model.breakpoints,
        piece_class,
    }
}

fn build_class(p: &Presentation, run: &[Unit]) -> SimClass {
    if let [Unit {
        kind: UnitKind::Dense(lo, hi, exact),
        ..
    }] = run
    {
        return SimClass {
            kind: ClassKind::DenseSingletons,
            lo: lo.clone(),
            hi: hi.clone(),
            members: exact.then(|| Presentation::new(vec![Atom::open(lo.clone(), hi.clone())]).expect("open interval")),
        };
    }
    let mut atoms = Vec::new();
    let mut infinite = false;
    let mut points = 0;
    for u in run {
        match &u.kind {
            UnitKind::Point(x) => {
                points += 1;
                atoms.push(Atom::Point(x.clone()));
            }
            UnitKind::Chain(s) => {
                infinite = true;
                let mut s = s.clone();
                s.limit_included = false;
                atoms.extend(
                    p.atoms()
                        .iter()
                        .filter(|a| matches!(a, Atom::Point(x) if &s.lo < x && x < &s.hi))
                        .cloned(),
                );
                atoms.push(Atom::Seq(s));
            }
            UnitKind::Dense(..) => unreachable!("dense units never join"),
        }
    }
    let members = Presentation::from_union(atoms).expect("class members are disjoint");
    let kind = if infinite {
        ClassKind::InfiniteDiscrete
    } else if points == 1 {
        ClassKind::Singleton
    } else {
        ClassKind::FiniteDiscrete(points)
    };
    let sup = |a: &Atom| match a {
        Atom::Point(x) => Bound::Finite(x.clone()),
        Atom::Seq(s) => Bound::Finite(s.hi.clone()),
        Atom::Interval { hi, .. } => hi.clone(),
    };
    let lo = members.atoms()[0].infimum();
    let hi = members.atoms().iter().map(sup).max().expect("nonempty class");
    SimClass {
        kind,
        lo,
        hi,
        members: Some(members),
    }
}

// ---------------------------------------------------------------------------

/// How an endpoint of a `≍` interval class relates to the set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EndpointKind {
    /// The endpoint is a member of the set.
    InSet,
    /// The endpoint is outside the set and belongs to this class only.
    InComplement,
    /// The endpoint is outside the set and bounds two interval classes;
    /// `≍` fails to be transitive through it and it is listed as its own
    /// class.
    Shared,
    Unbounded,
}

impl fmt::Display for EndpointKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EndpointKind::InSet => "set",
            EndpointKind::InComplement => "complement",
            EndpointKind::Shared => "shared",
            EndpointKind::Unbounded => "unbounded",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AsympClass {
    /// All rationals in `[lo, hi]` (shared endpoints excepted).
    Interval {
        lo: Bound,
        hi: Bound,
        lo_kind: EndpointKind,
        hi_kind: EndpointKind,
    },
    /// Every rational in this region is a class on its own.
    SingletonRun {
        lo: Bound,
        hi: Bound,
        lo_closed: bool,
        hi_closed: bool,
    },
}

impl AsympClass {
    pub fn is_interval(&self) -> bool {
        matches!(self, AsympClass::Interval { .. })
    }

    /// Both finite endpoints lie outside the set.
    pub fn both_ends_in_complement(&self) -> bool {
        matches!(
            self,
            AsympClass::Interval { lo_kind, hi_kind, .. }
                if *lo_kind != EndpointKind::InSet
                    && *lo_kind != EndpointKind::Unbounded
                    && *hi_kind != EndpointKind::InSet
                    && *hi_kind != EndpointKind::Unbounded
        )
    }

    pub fn contains(&self, x: &Rational) -> bool {
        match self {
            AsympClass::Interval {
                lo,
                hi,
                lo_kind,
                hi_kind,
            } => Atom::Interval {
                lo: lo.clone(),
                hi: hi.clone(),
                lo_closed: !matches!(lo_kind, EndpointKind::Shared | EndpointKind::Unbounded),
                hi_closed: !matches!(hi_kind, EndpointKind::Shared | EndpointKind::Unbounded),
            }
            .contains(x),
            AsympClass::SingletonRun {
                lo,
                hi,
                lo_closed,
                hi_closed,
            } => Atom::Interval {
                lo: lo.clone(),
                hi: hi.clone(),
                lo_closed: *lo_closed,
                hi_closed: *hi_closed,
            }
            .contains(x),
        }
    }
}

impl fmt::Display for AsympClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AsympClass::Interval {
                lo,
                hi,
                lo_kind,
                hi_kind,
            } => write!(f, "class [{lo}, {hi}] ends {lo_kind}/{hi_kind}"),
            AsympClass::SingletonRun {
                lo,
                hi,
                lo_closed,
                hi_closed,
            } => write!(
                f,
                "singletons {}{lo}, {hi}{}",
                if *lo_closed { "[" } else { "(" },
                if *hi_closed { "]" } else { ")" }
            ),
        }
    }
}

/// `left ≍ shared ≍ right` while `left` and `right` are unrelated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransitivityViolation {
    pub left: Rational,
    pub shared: Rational,
    pub right: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AsympDecomposition {
    pub classes: Vec<AsympClass>,
    pub violations: Vec<TransitivityViolation>,
}

impl AsympDecomposition {
    pub fn class_of(&self, x: &Rational) -> Option<usize> {
        self.classes.iter().position(|c| c.contains(x))
    }

    /// `x` sits in no interval class.
    pub fn is_isolated(&self, x: &Rational) -> bool {
        self.class_of(x).is_none_or(|i| !self.classes[i].is_interval())
    }

    pub fn intervals(&self) -> impl Iterator<Item = &AsympClass> {
        self.classes.iter().filter(|c| c.is_interval())
    }
}

/// `≍` classes of Q relative to `sv`.
pub fn asymp_classes(sv: &Presentation) -> AsympDecomposition {
    let intervals: Vec<(Bound, Bound, bool, bool)> = sv
        .atoms()
        .iter()
        .filter_map(|a| match a {
            Atom::Interval {
                lo,
                hi,
                lo_closed,
                hi_closed,
            } => Some((lo.clone(), hi.clone(), *lo_closed, *hi_closed)),
            _ => None,
        })
        .collect();

    let kind = |b: &Bound, closed: bool, shared: bool| match b {
        Bound::Finite(_) if closed => EndpointKind::InSet,
        Bound::Finite(_) if shared => EndpointKind::Shared,
        Bound::Finite(_) => EndpointKind::InComplement,
        _ => EndpointKind::Unbounded,
    };

    let mut classes = Vec::new();
    let mut violations = Vec::new();
    // Start of the pending singleton region: bound and whether it is closed.
    let mut cursor = Bound::NegInf;
    for (i, (lo, hi, lc, hc)) in intervals.iter().enumerate() {
        let shared_lo = i > 0 && intervals[i - 1].1 == *lo;
        let shared_hi = intervals.get(i + 1).is_some_and(|n| n.0 == *hi);
        push_run(&mut classes, &cursor, lo);
        if shared_lo {
            let e = lo.finite().expect("shared ends are finite").clone();
            let prev = &intervals[i - 1];
            violations.push(TransitivityViolation {
                left: super::construct::simplest_between(&prev.0, &prev.1),
                shared: e.clone(),
                right: super::construct::simplest_between(lo, hi),
            });
            classes.push(AsympClass::SingletonRun {
                lo: Bound::Finite(e.clone()),
                hi: Bound::Finite(e),
                lo_closed: true,
                hi_closed: true,
            });
        }
        classes.push(AsympClass::Interval {
            lo: lo.clone(),
            hi: hi.clone(),
            lo_kind: kind(lo, *lc, shared_lo),
            hi_kind: kind(hi, *hc, shared_hi),
        });
        cursor = hi.clone();
    }
    push_run(&mut classes, &cursor, &Bound::PosInf);
    AsympDecomposition { classes, violations }
}

/// Pushes the singleton region strictly between two interval classes.
fn push_run(classes: &mut Vec<AsympClass>, lo: &Bound, to: &Bound) {
    let empty = match (lo, to) {
        (Bound::Finite(a), Bound::Finite(b)) => a >= b,
        (Bound::PosInf, _) | (_, Bound::NegInf) => true,
        _ => false,
    };
    if !empty {
        classes.push(AsympClass::SingletonRun {
            lo: lo.clone(),
            hi: to.clone(),
            lo_closed: false,
            hi_closed: false,
        });
    }
}
