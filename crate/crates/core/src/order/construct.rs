//! The four automorphism constructions and the pairing core they share.

use std::fmt;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use super::automorphism::{AnchorError, OrderAutomorphism};
use super::case::{select_case, Case, CaseError};
use super::classes::{asymp_classes, sim_classes, ClassKind};
use super::image::{image_presentation, ImageError};
use super::presentation::{Atom, Bound, Direction, Presentation, PresentationError};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error(transparent)]
    Case(#[from] CaseError),
    #[error("construction needs case {needed}, the set is in case {actual}")]
    WrongCase { needed: String, actual: Case },
    #[error("{0} is already in the set")]
    InSet(Rational),
    #[error("{0} lies in a non-trivial ≍ class")]
    NotIsolated(Rational),
    #[error("{0} is outside the narrowed window or in one of its boundary classes")]
    BoundaryClass(Rational),
    #[error("no order automorphism exists: {0}")]
    Obstruction(String),
    #[error("class {0} does not exist")]
    NoSuchClass(usize),
    #[error("class {index} is {kind}, not infinite-discrete")]
    NotInfinite { index: usize, kind: ClassKind },
    #[error("{0} is not strictly between two consecutive class members")]
    NotInGap(Rational),
    #[error("{0} is not an interior member of a finite class of size at least 3")]
    NotInterior(Rational),
    #[error("boxes precondition failed: {0}")]
    Boxes(String),
    #[error(transparent)]
    Anchors(#[from] AnchorError),
    #[error(transparent)]
    Image(#[from] ImageError),
    #[error(transparent)]
    Presentation(#[from] PresentationError),
}

fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// The rational of least height (Stern–Brocot depth) in the open interval
/// `(lo, hi)`. Panics if the interval is empty.
pub fn simplest_between(lo: &Bound, hi: &Bound) -> Rational {
    assert!(lo < hi, "empty interval ({lo}, {hi})");
    match (lo, hi) {
        (Bound::NegInf, Bound::PosInf) => Rational::zero(),
        (Bound::Finite(a), Bound::PosInf) => {
            if a.is_negative() {
                Rational::zero()
            } else {
                a.floor() + Rational::one()
            }
        }
        (Bound::NegInf, Bound::Finite(b)) => -simplest_between(&Bound::Finite(-b), &Bound::PosInf),
        (Bound::Finite(a), Bound::Finite(b)) => simplest_finite(a, b),
        _ => unreachable!("bounds ordered"),
    }
}

fn simplest_finite(a: &Rational, b: &Rational) -> Rational {
    if a.is_negative() && b.is_positive() {
        return Rational::zero();
    }
    if !b.is_positive() {
        return -simplest_finite(&-b, &-a);
    }
    // 0 <= a < b
    let fl = a.floor();
    if &(&fl + Rational::one()) < b {
        return fl + Rational::one();
    }
    // No integer strictly inside; a and b share the integer part `fl`
    // (b may equal fl + 1).
    let lo = (b - &fl).recip();
    let rest = if a == &fl {
        simplest_between(&Bound::Finite(lo), &Bound::PosInf)
    } else {
        simplest_finite(&lo, &(a - &fl).recip())
    };
    fl + rest.recip()
}

// ---------------------------------------------------------------------------
// Pairing core

#[derive(Clone, Debug, PartialEq, Eq)]
enum Shape {
    Point,
    Interval {
        lo: bool,
        hi: bool,
        lo_inf: bool,
        hi_inf: bool,
    },
    Seq(Direction, bool),
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Shape::Point => f.write_str("pt"),
            Shape::Interval { lo, hi, lo_inf, hi_inf } => {
                let end = |closed: bool, inf: bool| {
                    if inf {
                        "inf"
                    } else if closed {
                        "c"
                    } else {
                        "o"
                    }
                };
                write!(f, "iv({},{})", end(*lo, *lo_inf), end(*hi, *hi_inf))
            }
            Shape::Seq(d, incl) => write!(
                f,
                "seq({},{})",
                if *d == Direction::Increasing { "inc" } else { "dec" },
                if *incl { "incl" } else { "excl" }
            ),
        }
    }
}

fn shape(a: &Atom) -> Shape {
    match a {
        Atom::Point(_) => Shape::Point,
        Atom::Interval {
            lo,
            hi,
            lo_closed,
            hi_closed,
        } => Shape::Interval {
            lo: *lo_closed,
            hi: *hi_closed,
            lo_inf: lo.finite().is_none(),
            hi_inf: hi.finite().is_none(),
        },
        Atom::Seq(s) => Shape::Seq(s.direction, s.limit_included),
    }
}

fn atom_sup(a: &Atom) -> Bound {
    match a {
        Atom::Point(x) => Bound::Finite(x.clone()),
        Atom::Interval { hi, .. } => hi.clone(),
        Atom::Seq(s) => Bound::Finite(s.hi.clone()),
    }
}

fn inside(a: &Atom, window: &(Bound, Bound)) -> bool {
    window.0 <= a.infimum() && atom_sup(a) <= window.1
}

fn census(atoms: &[&Atom]) -> String {
    atoms.iter().map(|a| shape(a).to_string()).collect::<Vec<_>>().join(" ")
}

/// An automorphism, identity outside `window`, carrying `from` onto `to`.
///
/// Atoms are paired in order and must have the same shape: an order
/// automorphism maps points to points, each interval onto an interval with
/// the same end behaviour and each sequence onto a sequence with the same
/// direction. Sequences are paired affinely, so points in the gaps of a
/// sequence must correspond under that affine map.
pub fn order_isomorphism(
    from: &Presentation,
    to: &Presentation,
    window: &(Bound, Bound),
) -> Result<OrderAutomorphism, ConstructionError> {
    fn split<'p>(p: &'p Presentation, window: &(Bound, Bound)) -> (Vec<&'p Atom>, Vec<&'p Atom>) {
        p.atoms().iter().partition(|a| inside(a, window))
    }
    let (src, src_out) = split(from, window);
    let (dst, dst_out) = split(to, window);
    if src_out != dst_out {
        return Err(ConstructionError::Obstruction(format!(
            "the sets differ outside the window ({}, {})",
            window.0, window.1
        )));
    }
    let (src_shapes, dst_shapes) = (census(&src), census(&dst));
    if src_shapes != dst_shapes {
        return Err(ConstructionError::Obstruction(format!(
            "inside ({}, {}) the components are [{src_shapes}] versus [{dst_shapes}]; \
             an order automorphism preserves the ordered list of components and their end types",
            window.0, window.1
        )));
    }

    let mut pairs: Vec<(Rational, Rational)> = Vec::new();
    for (a, b) in src.iter().zip(&dst) {
        match (a, b) {
            (Atom::Point(x), Atom::Point(y)) => pairs.push((x.clone(), y.clone())),
            (Atom::Interval { lo, hi, .. }, Atom::Interval { lo: lo2, hi: hi2, .. }) => {
                if let (Some(x), Some(y)) = (lo.finite(), lo2.finite()) {
                    pairs.push((x.clone(), y.clone()));
                }
                if let (Some(x), Some(y)) = (hi.finite(), hi2.finite()) {
                    pairs.push((x.clone(), y.clone()));
                }
            }
            (Atom::Seq(s), Atom::Seq(t)) => {
                pairs.push((s.lo.clone(), t.lo.clone()));
                pairs.push((s.hi.clone(), t.hi.clone()));
            }
            _ => unreachable!("shapes matched"),
        }
    }
    let all: Vec<&Rational> = pairs.iter().flat_map(|(x, y)| [x, y]).collect();
    let lo_fix = match &window.0 {
        Bound::Finite(x) => x.clone(),
        _ => all.iter().map(|x| (*x).clone()).min().unwrap_or_else(Rational::zero) - Rational::one(),
    };
    let hi_fix = match &window.1 {
        Bound::Finite(x) => x.clone(),
        _ => all.iter().map(|x| (*x).clone()).max().unwrap_or_else(Rational::zero) + Rational::one(),
    };
    let mut anchors = pairs;
    anchors.push((lo_fix.clone(), lo_fix));
    anchors.push((hi_fix.clone(), hi_fix));
    // Gap points sort after their sequence; reorder by source coordinate.
    anchors.sort();
    anchors.dedup();
    let alpha = OrderAutomorphism::new(anchors)
        .map_err(|e| ConstructionError::Obstruction(format!("paired anchors are not monotone: {e}")))?;
    let image = image_presentation(&alpha, from)?;
    if &image != to {
        return Err(ConstructionError::Obstruction(format!(
            "paired map sends the set to {image}, not {to}"
        )));
    }
    Ok(alpha)
}

// ---------------------------------------------------------------------------
// Constructions

/// Back-and-forth growth by one point: an automorphism with
/// `α(SV) = SV ∪ {r}`, identity outside the narrowed window.
pub fn alpha_backforth(sv: &Presentation, r: &Rational) -> Result<OrderAutomorphism, ConstructionError> {
    let sel = select_case(sv)?;
    if !matches!(sel.case, Case::OnlySingletons | Case::AllSize2NoHatNonSingletons) {
        return Err(ConstructionError::WrongCase {
            needed: format!("{} or {}", Case::OnlySingletons, Case::AllSize2NoHatNonSingletons),
            actual: sel.case,
        });
    }
    if sv.contains(r) {
        return Err(ConstructionError::InSet(r.clone()));
    }
    let asymp = asymp_classes(sv);
    if !asymp.is_isolated(r) {
        return Err(ConstructionError::NotIsolated(r.clone()));
    }
    let window = sel.narrowed_interval.expect("window set for back-and-forth cases");
    let r_bound = Bound::Finite(r.clone());
    if !(window.0 < r_bound && r_bound < window.1) {
        return Err(ConstructionError::BoundaryClass(r.clone()));
    }
    let target = sv.with_point(r.clone())?;
    order_isomorphism(sv, &target, &window)
}

/// Grows an infinite discrete class by the point `w` lying in one of its
/// gaps, shifting the class members on one side of `w` along its tail.
pub fn alpha_infinite_class(
    sv: &Presentation,
    class_index: usize,
    w: &Rational,
) -> Result<OrderAutomorphism, ConstructionError> {
    let classes = sim_classes(sv);
    let class = classes
        .classes
        .get(class_index)
        .ok_or(ConstructionError::NoSuchClass(class_index))?;
    if class.kind != ClassKind::InfiniteDiscrete {
        return Err(ConstructionError::NotInfinite {
            index: class_index,
            kind: class.kind,
        });
    }
    if sv.contains(w) {
        return Err(ConstructionError::InSet(w.clone()));
    }
    let members = class.members.clone().expect("set-side classes are presented");
    if let Some(alpha) = shift_up(&members, w)? {
        return Ok(alpha);
    }
    let mirrored = shift_up(&members.negate(), &-w)?.ok_or_else(|| ConstructionError::NotInGap(w.clone()))?;
    let anchors = mirrored.anchors().iter().rev().map(|(x, y)| (-x, -y)).collect();
    Ok(OrderAutomorphism::new(anchors)?)
}

/// Members of a discrete class as an ascending lazy list: explicit points
/// first, the increasing tail last.
fn shift_up(members: &Presentation, w: &Rational) -> Result<Option<OrderAutomorphism>, ConstructionError> {
    let tail = members.atoms().iter().find_map(|a| match a {
        Atom::Seq(s) if s.direction == Direction::Increasing && w < &s.hi => Some(s.clone()),
        _ => None,
    });
    let Some(tail) = tail else {
        return Ok(None);
    };
    let pred = largest_member_below(members, w).ok_or_else(|| ConstructionError::NotInGap(w.clone()))?;

    // Explicit members above w, excluding the increasing tail.
    let mut explicit: Vec<Rational> = Vec::new();
    for a in members.atoms() {
        match a {
            Atom::Point(x) if x > w => explicit.push(x.clone()),
            Atom::Seq(s) if s.direction == Direction::Decreasing => {
                let mut n = 0;
                while &s.member(n) > w {
                    explicit.push(s.member(n));
                    n += 1;
                }
            }
            _ => {}
        }
    }
    let floor = explicit
        .iter()
        .max()
        .cloned()
        .unwrap_or_else(|| w.clone())
        .max(w.clone());
    let mut k0 = 0;
    while tail.member(k0) <= floor {
        k0 += 1;
    }
    explicit.extend((0..k0 + 2).map(|n| tail.member(n)).filter(|x| x > w));
    explicit.sort();

    let mut anchors = vec![(pred.clone(), pred), (explicit[0].clone(), w.clone())];
    anchors.extend(explicit.windows(2).map(|p| (p[1].clone(), p[0].clone())));
    anchors.push((tail.hi.clone(), tail.hi.clone()));
    Ok(Some(OrderAutomorphism::new(anchors)?))
}

fn largest_member_below(members: &Presentation, w: &Rational) -> Option<Rational> {
    let mut best: Option<Rational> = None;
    let mut offer = |x: Rational| {
        if best.as_ref().is_none_or(|b| &x > b) {
            best = Some(x);
        }
    };
    for a in members.atoms() {
        match a {
            Atom::Point(x) if x < w => offer(x.clone()),
            Atom::Seq(s) => match s.direction {
                Direction::Increasing if &s.hi <= w => {
                    if s.limit_included && &s.hi < w {
                        offer(s.hi.clone());
                    }
                }
                Direction::Increasing if &s.lo < w => {
                    let mut n = 0;
                    while &s.member(n + 1) < w {
                        n += 1;
                    }
                    offer(s.member(n));
                }
                Direction::Decreasing if &s.lo < w => {
                    let mut n = 0;
                    while &s.member(n) >= w {
                        n += 1;
                    }
                    offer(s.member(n));
                }
                _ => {}
            },
            _ => {}
        }
    }
    best
}

/// Moves an interior member `r` of a finite class towards its upper
/// neighbour, fixing every other member.
pub fn alpha_move_interior(sv: &Presentation, r: &Rational) -> Result<OrderAutomorphism, ConstructionError> {
    let classes = sim_classes(sv);
    let not_interior = || ConstructionError::NotInterior(r.clone());
    let class = classes
        .class_of(r)
        .map(|i| &classes.classes[i])
        .ok_or_else(not_interior)?;
    if !matches!(class.kind, ClassKind::FiniteDiscrete(k) if k >= 3) {
        return Err(not_interior());
    }
    let points: Vec<&Rational> = class
        .members
        .as_ref()
        .expect("set-side classes are presented")
        .atoms()
        .iter()
        .filter_map(|a| match a {
            Atom::Point(x) => Some(x),
            _ => None,
        })
        .collect();
    let i = points.iter().position(|x| *x == r).ok_or_else(not_interior)?;
    if i == 0 || i + 1 == points.len() {
        return Err(not_interior());
    }
    let (prev, next) = (points[i - 1].clone(), points[i + 1].clone());
    let target = (r + &next) / int(2);
    Ok(OrderAutomorphism::new(vec![
        (prev.clone(), prev),
        (r.clone(), target),
        (next.clone(), next),
    ])?)
}

/// Whether `α(SV)` or `α⁻¹(SV)` strictly contains `SV`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrowthReport {
    pub image: Presentation,
    pub preimage: Presentation,
    pub image_grows: bool,
    pub preimage_grows: bool,
}

impl GrowthReport {
    pub fn compute(alpha: &OrderAutomorphism, sv: &Presentation) -> Result<Self, ImageError> {
        let image = image_presentation(alpha, sv)?;
        let preimage = image_presentation(&alpha.invert(), sv)?;
        Ok(Self {
            image_grows: sv.is_strict_subset_of(&image),
            preimage_grows: sv.is_strict_subset_of(&preimage),
            image,
            preimage,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoxesConstruction {
    pub alpha: OrderAutomorphism,
    /// `α(q')`.
    pub c: Rational,
    /// `α(a)`.
    pub d: Rational,
    pub growth: GrowthReport,
}

/// The two-box automorphism: fixes `q` and `a'`, is the identity outside
/// `[q, a']`, and sends `q'` to `c` and `a` to `d` with `a < c < d < a'`.
/// Either `q` may be `-inf` or `a'` may be `+inf`.
pub fn alpha_boxes(
    sv: &Presentation,
    q: &Bound,
    q_prime: &Rational,
    a: &Rational,
    a_prime: &Bound,
) -> Result<BoxesConstruction, ConstructionError> {
    let fail = |m: String| Err(ConstructionError::Boxes(m));
    let qp = Bound::Finite(q_prime.clone());
    let ab = Bound::Finite(a.clone());
    if matches!(q, Bound::PosInf) || matches!(a_prime, Bound::NegInf) || !(q < &qp && q_prime < a && &ab < a_prime) {
        return fail(format!("need q < q' < a < a', got {q}, {q_prime}, {a}, {a_prime}"));
    }
    if sv.meets_open(q, &qp) {
        return fail(format!("({q}, {q_prime}) meets the set"));
    }
    if sv.meets_open(&ab, a_prime) {
        return fail(format!("({a}, {a_prime}) meets the set"));
    }
    if let Some(x) = q.finite() {
        if sv.contains(x) {
            return fail(format!("q = {x} is in the set"));
        }
    }
    if sv.contains(q_prime) {
        return fail(format!("q' = {q_prime} is in the set"));
    }
    if !sv.contains(a) {
        return fail(format!("a = {a} is not in the set"));
    }
    if let Some(x) = a_prime.finite() {
        if !sv.contains(x) {
            return fail(format!("a' = {x} is not in the set"));
        }
    }

    let c = simplest_between(&ab, a_prime);
    let d = simplest_between(&Bound::Finite(c.clone()), a_prime);
    let first = match q {
        Bound::Finite(x) => x.clone(),
        _ => q_prime.floor() - Rational::one(),
    };
    let last = match a_prime {
        Bound::Finite(x) => x.clone(),
        _ => d.floor() + Rational::one(),
    };
    let alpha = OrderAutomorphism::new(vec![
        (first.clone(), first),
        (q_prime.clone(), c.clone()),
        (a.clone(), d.clone()),
        (last.clone(), last),
    ])?;
    let growth = GrowthReport::compute(&alpha, sv)?;
    Ok(BoxesConstruction { alpha, c, d, growth })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::parse_rational;

    fn q(s: &str) -> Rational {
        parse_rational(s).unwrap()
    }

    fn p(s: &str) -> Presentation {
        s.parse().unwrap()
    }

    fn fin(s: &str) -> Bound {
        Bound::Finite(q(s))
    }

    /// Exhaustive search over fractions with small denominators.
    fn brute_simplest(lo: &Rational, hi: &Rational) -> Rational {
        for den in 1i64..200 {
            let mut best: Option<Rational> = None;
            for num in -2000i64..=2000 {
                let x = Rational::new(num.into(), den.into());
                if lo < &x && &x < hi && best.as_ref().is_none_or(|b| x.abs() < b.abs()) {
                    best = Some(x);
                }
            }
            if let Some(b) = best {
                return b;
            }
        }
        panic!("no fraction found");
    }

    #[test]
    fn simplest_matches_brute_force() {
        let cases = [
            ("1", "3"),
            ("2", "3"),
            ("1/3", "1/2"),
            ("-1/2", "0"),
            ("-7/3", "-2"),
            ("3/7", "4/9"),
            ("-1", "1"),
            ("13/10", "4/3"),
        ];
        for (a, b) in cases {
            assert_eq!(
                simplest_between(&fin(a), &fin(b)),
                brute_simplest(&q(a), &q(b)),
                "({a}, {b})"
            );
        }
        assert_eq!(simplest_between(&fin("2"), &fin("3")), q("5/2"));
        assert_eq!(simplest_between(&fin("5/2"), &Bound::PosInf), q("3"));
        assert_eq!(simplest_between(&Bound::NegInf, &fin("-5/2")), q("-3"));
    }

    #[test]
    fn pairing_core_matches_shapes() {
        let from = p("iv(0,1,o,o) U pt(5/2) U seq(3,4,inc,excl)");
        let to = p("iv(0,3/2,o,o) U pt(7/4) U seq(2,5,inc,excl)");
        let w = (fin("-1"), fin("6"));
        let alpha = order_isomorphism(&from, &to, &w).unwrap();
        assert_eq!(image_presentation(&alpha, &from).unwrap(), to);
        let bad = p("iv(0,1,o,c) U pt(5/2) U seq(3,4,inc,excl)");
        assert!(matches!(
            order_isomorphism(&from, &bad, &w),
            Err(ConstructionError::Obstruction(_))
        ));
    }

    #[test]
    fn backforth_cannot_add_a_component() {
        let sv = p("iv(0,1,o,o) U iv(2,3,o,o)");
        assert!(matches!(
            alpha_backforth(&sv, &q("3/2")),
            Err(ConstructionError::Obstruction(_))
        ));
        assert_eq!(alpha_backforth(&sv, &q("1/2")), Err(ConstructionError::InSet(q("1/2"))));
        assert_eq!(
            alpha_backforth(&sv, &q("0")),
            Err(ConstructionError::NotIsolated(q("0")))
        );
        assert!(matches!(
            alpha_backforth(&p("pt(0) U pt(1) U pt(2)"), &q("1/2")),
            Err(ConstructionError::WrongCase { .. })
        ));
    }

    #[test]
    fn infinite_class_shift() {
        let sv = p("seq(0,1,inc,excl)");
        let a = alpha_infinite_class(&sv, 0, &q("5/8")).unwrap();
        assert_eq!(a.to_string(), "anchors: 1/2->1/2, 3/4->5/8, 7/8->3/4, 1->1");
        assert_eq!(image_presentation(&a, &sv).unwrap(), p("seq(0,1,inc,excl) U pt(5/8)"));
        assert_eq!(a.apply(&q("-3")), q("-3"));
        assert_eq!(a.apply(&q("2")), q("2"));
        assert_eq!(
            alpha_infinite_class(&sv, 0, &q("3/4")),
            Err(ConstructionError::InSet(q("3/4")))
        );
        assert_eq!(
            alpha_infinite_class(&sv, 0, &q("2")),
            Err(ConstructionError::NotInGap(q("2")))
        );
        assert_eq!(
            alpha_infinite_class(&sv, 3, &q("5/8")),
            Err(ConstructionError::NoSuchClass(3))
        );
    }

    #[test]
    fn infinite_class_lower_tail_and_extras() {
        let sv = p("seq(0,1,dec,excl) U pt(3/2)");
        let a = alpha_infinite_class(&sv, 0, &q("5/4")).unwrap();
        let image = image_presentation(&a, &sv).unwrap();
        assert_eq!(image, sv.with_point(q("5/4")).unwrap());

        let sv = p("pt(-1) U seq(0,1,inc,incl) U pt(9/16) U pt(2)");
        let a = alpha_infinite_class(&sv, 0, &q("1/4")).unwrap();
        assert_eq!(image_presentation(&a, &sv).unwrap(), sv.with_point(q("1/4")).unwrap());
    }

    #[test]
    fn move_interior_point() {
        let sv = p("pt(0) U pt(1) U pt(2)");
        let a = alpha_move_interior(&sv, &q("1")).unwrap();
        assert_eq!(a.apply(&q("1")), q("3/2"));
        assert_eq!(a.apply(&q("0")), q("0"));
        assert_eq!(a.apply(&q("2")), q("2"));
        assert_eq!(a.power(2).apply(&q("1")), q("7/4"));
        assert_eq!(a.power(3).apply(&q("1")), q("15/8"));
        for r in ["0", "2", "5"] {
            assert_eq!(
                alpha_move_interior(&sv, &q(r)),
                Err(ConstructionError::NotInterior(q(r)))
            );
        }
    }

    #[test]
    fn boxes_example() {
        let sv = p("pt(-1) U pt(1) U iv(3,4,c,c)");
        let b = alpha_boxes(&sv, &fin("-1/2"), &q("0"), &q("1"), &fin("3")).unwrap();
        assert_eq!(b.alpha.to_string(), "anchors: -1/2->-1/2, 0->2, 1->5/2, 3->3");
        assert_eq!((b.c.clone(), b.d.clone()), (q("2"), q("5/2")));
        assert_eq!(b.growth.image, p("pt(-1) U pt(5/2) U iv(3,4,c,c)"));
        assert_eq!(b.growth.preimage, p("pt(-1) U pt(-1/5) U iv(3,4,c,c)"));
        assert!(!b.growth.image_grows);
        assert!(!b.growth.preimage_grows);
    }

    #[test]
    fn boxes_infinite_ends_and_errors() {
        let sv = p("pt(-1) U pt(1) U iv(3,4,c,c)");
        let b = alpha_boxes(&sv, &Bound::NegInf, &q("-2"), &q("-1"), &fin("1")).unwrap();
        assert_eq!(b.alpha.anchors()[0], (q("-3"), q("-3")));
        assert_eq!((b.c, b.d), (q("0"), q("1/2")));
        let e = alpha_boxes(&sv, &Bound::NegInf, &q("0"), &q("1"), &fin("4")).unwrap_err();
        assert!(matches!(e, ConstructionError::Boxes(_)));
        let sv = p("pt(1)");
        let b = alpha_boxes(&sv, &Bound::NegInf, &q("0"), &q("1"), &Bound::PosInf).unwrap();
        assert_eq!(b.alpha.apply(&q("-5")), q("-5"));
        assert_eq!(b.alpha.apply(&q("0")), q("2"));
        assert_eq!(b.alpha.apply(&q("1")), q("3"));
        assert!(alpha_boxes(&sv, &fin("0"), &q("1/2"), &q("1"), &Bound::PosInf).is_ok());
        assert!(alpha_boxes(&sv, &fin("1/2"), &q("0"), &q("1"), &Bound::PosInf).is_err());
    }
}
