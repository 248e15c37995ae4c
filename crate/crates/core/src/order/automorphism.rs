//! Piecewise-linear order automorphisms of the rationals.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use thiserror::Error;

use super::presentation::parse_rational;
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnchorError {
    #[error("anchors {0} and {1} are not strictly increasing in both coordinates")]
    NotIncreasing(usize, usize),
    #[error("boundary anchor {0} is not a fixed point")]
    BoundaryNotFixed(usize),
    #[error("malformed anchor table: {0}")]
    Syntax(String),
}

/// A strictly increasing bijection of Q given by anchor pairs `x -> y`.
///
/// Between consecutive anchors the map is linear; outside the first and
/// last anchor it is the identity, so both boundary anchors are fixed
/// points. The empty table is the identity.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct OrderAutomorphism {
    anchors: Vec<(Rational, Rational)>,
}

impl OrderAutomorphism {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn new(anchors: Vec<(Rational, Rational)>) -> Result<Self, AnchorError> {
        if let Some(i) = first_non_increasing(&anchors) {
            return Err(AnchorError::NotIncreasing(i, i + 1));
        }
        if let Some((x, y)) = anchors.first() {
            if x != y {
                return Err(AnchorError::BoundaryNotFixed(0));
            }
        }
        if let Some((x, y)) = anchors.last() {
            if x != y {
                return Err(AnchorError::BoundaryNotFixed(anchors.len() - 1));
            }
        }
        Ok(Self { anchors }.canonical())
    }

    /// Keeps `anchors` as given, without validation. Only
    /// [`verify_automorphism`](super::verify_automorphism) should be trusted
    /// on the result.
    pub fn from_raw_anchors(anchors: Vec<(Rational, Rational)>) -> Self {
        Self { anchors }
    }

    pub fn anchors(&self) -> &[(Rational, Rational)] {
        &self.anchors
    }

    pub fn is_identity(&self) -> bool {
        self.anchors.iter().all(|(x, y)| x == y)
    }

    /// `[first anchor, last anchor]`, outside of which the map is the
    /// identity.
    pub fn support(&self) -> Option<(&Rational, &Rational)> {
        Some((&self.anchors.first()?.0, &self.anchors.last()?.0))
    }

    pub fn apply(&self, x: &Rational) -> Rational {
        interpolate(&self.anchors, x, |a| &a.0, |a| &a.1)
    }

    pub fn apply_inverse(&self, y: &Rational) -> Rational {
        interpolate(&self.anchors, y, |a| &a.1, |a| &a.0)
    }

    pub fn invert(&self) -> Self {
        Self {
            anchors: self.anchors.iter().map(|(x, y)| (y.clone(), x.clone())).collect(),
        }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Self) -> Self {
        let mut xs: Vec<Rational> = other.anchors.iter().map(|a| a.0.clone()).collect();
        xs.extend(self.anchors.iter().map(|a| other.apply_inverse(&a.0)));
        xs.sort();
        xs.dedup();
        let anchors = xs
            .into_iter()
            .map(|x| {
                let y = self.apply(&other.apply(&x));
                (x, y)
            })
            .collect();
        Self { anchors }.canonical()
    }

    /// `m`-fold composite; negative `m` uses the inverse.
    pub fn power(&self, m: i64) -> Self {
        let base = if m < 0 { self.invert() } else { self.clone() };
        let mut out = Self::identity();
        for _ in 0..m.unsigned_abs() {
            out = base.compose(&out);
        }
        out
    }

    /// Drops anchors that do not change the map.
    pub fn canonical(mut self) -> Self {
        let mut out: Vec<(Rational, Rational)> = Vec::with_capacity(self.anchors.len());
        for a in self.anchors.drain(..) {
            while out.len() >= 2 && collinear(&out[out.len() - 2], &out[out.len() - 1], &a) {
                out.pop();
            }
            out.push(a);
        }
        while out.len() >= 2 && out[0].0 == out[0].1 && out[1].0 == out[1].1 {
            out.remove(0);
        }
        while out.len() >= 2 && {
            let n = out.len();
            out[n - 1].0 == out[n - 1].1 && out[n - 2].0 == out[n - 2].1
        } {
            out.pop();
        }
        if out.len() == 1 && out[0].0 == out[0].1 {
            out.clear();
        }
        Self { anchors: out }
    }
}

fn first_non_increasing(anchors: &[(Rational, Rational)]) -> Option<usize> {
    anchors.windows(2).position(|w| w[0].0 >= w[1].0 || w[0].1 >= w[1].1)
}

fn collinear(a: &(Rational, Rational), b: &(Rational, Rational), c: &(Rational, Rational)) -> bool {
    let lhs = (&b.1 - &a.1) * (&c.0 - &a.0);
    let rhs = (&c.1 - &a.1) * (&b.0 - &a.0);
    (lhs - rhs).is_zero()
}

type Coord = fn(&(Rational, Rational)) -> &Rational;

fn interpolate(anchors: &[(Rational, Rational)], x: &Rational, from: Coord, to: Coord) -> Rational {
    let i = anchors.partition_point(|a| from(a) <= x);
    if i == 0 || i == anchors.len() && from(&anchors[i - 1]) != x {
        return x.clone();
    }
    let a = &anchors[i - 1];
    if from(a) == x {
        return to(a).clone();
    }
    let b = &anchors[i];
    let t = (x - from(a)) / (from(b) - from(a));
    to(a) + t * (to(b) - to(a))
}

impl fmt::Display for OrderAutomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("anchors:")?;
        for (i, (x, y)) in self.anchors.iter().enumerate() {
            let sep = if i == 0 { " " } else { ", " };
            write!(f, "{sep}{x}->{y}")?;
        }
        Ok(())
    }
}

impl FromStr for OrderAutomorphism {
    type Err = AnchorError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let body = text
            .trim()
            .strip_prefix("anchors:")
            .ok_or_else(|| AnchorError::Syntax("missing 'anchors:' prefix".into()))?;
        let mut anchors = Vec::new();
        for pair in body.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (x, y) = pair
                .split_once("->")
                .ok_or_else(|| AnchorError::Syntax(format!("expected x->y, got {pair:?}")))?;
            let parse =
                |s: &str| parse_rational(s.trim()).ok_or_else(|| AnchorError::Syntax(format!("bad rational {s:?}")));
            anchors.push((parse(x)?, parse(y)?));
        }
        Self::new(anchors)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rational {
        parse_rational(s).unwrap()
    }

    fn mover() -> OrderAutomorphism {
        OrderAutomorphism::new(vec![(q("0"), q("0")), (q("1"), q("3/2")), (q("2"), q("2"))]).unwrap()
    }

    #[test]
    fn identity_applies_trivially() {
        let id = OrderAutomorphism::identity();
        assert_eq!(id.apply(&q("-7/3")), q("-7/3"));
        assert_eq!(id.to_string(), "anchors:");
        assert_eq!("anchors:".parse::<OrderAutomorphism>().unwrap(), id);
    }

    #[test]
    fn interpolation_and_powers() {
        let a = mover();
        assert_eq!(a.apply(&q("1")), q("3/2"));
        assert_eq!(a.apply(&q("1/2")), q("3/4"));
        assert_eq!(a.apply(&q("5")), q("5"));
        assert_eq!(a.power(2).apply(&q("1")), q("7/4"));
        assert_eq!(a.power(3).apply(&q("1")), q("15/8"));
        assert_eq!(a.power(-1).apply(&q("3/2")), q("1"));
        assert!(a.compose(&a.invert()).is_identity());
        assert!(a.compose(&a.invert()).anchors().is_empty());
    }

    #[test]
    fn validation() {
        assert_eq!(
            OrderAutomorphism::new(vec![(q("0"), q("0")), (q("1"), q("-1")), (q("2"), q("2"))]),
            Err(AnchorError::NotIncreasing(0, 1))
        );
        assert_eq!(
            OrderAutomorphism::new(vec![(q("0"), q("1")), (q("2"), q("2"))]),
            Err(AnchorError::BoundaryNotFixed(0))
        );
    }

    #[test]
    fn canonical_drops_redundant_anchors() {
        let a = OrderAutomorphism::new(vec![
            (q("-5"), q("-5")),
            (q("0"), q("0")),
            (q("1"), q("3/2")),
            (q("3/2"), q("7/4")),
            (q("2"), q("2")),
            (q("9"), q("9")),
        ])
        .unwrap();
        assert_eq!(a, mover());
    }

    #[test]
    fn text_round_trip() {
        let a = mover();
        assert_eq!(a.to_string(), "anchors: 0->0, 1->3/2, 2->2");
        assert_eq!(a.to_string().parse::<OrderAutomorphism>().unwrap(), a);
    }
}
