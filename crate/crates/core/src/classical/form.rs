//! Finitely supported rational vectors and the form
//! `iota(v) = v0^2 + v1^2 - sum_{i not in {0,1}} vi^2`.
//!
//! The quadrangle of this form over an infinite index set is never
//! materialized; only its defining predicates are evaluated. The form has
//! Witt index exactly 2, but only the lower bound (a totally isotropic plane
//! exists) is checked here: [`witt_witness`] returns such a plane. The upper
//! bound needs a definiteness argument and is not machine-verified.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::Rational;

/// Element of the rational vector space with finitely many nonzero
/// coordinates, indexed by non-negative integers (0 and 1 are the
/// positive-signature coordinates).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SparseRationalVector {
    entries: BTreeMap<u64, Rational>,
}

impl SparseRationalVector {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn unit(index: u64) -> Self {
        Self::from_entries([(index, Rational::one())])
    }

    /// Builds a vector, summing repeated indices and dropping zeros.
    pub fn from_entries(entries: impl IntoIterator<Item = (u64, Rational)>) -> Self {
        let mut v = Self::zero();
        for (i, x) in entries {
            v.add_at(i, x);
        }
        v
    }

    fn add_at(&mut self, i: u64, x: Rational) {
        let slot = self.entries.entry(i).or_insert_with(Rational::zero);
        *slot += x;
        if slot.is_zero() {
            self.entries.remove(&i);
        }
    }

    pub fn get(&self, index: u64) -> Rational {
        self.entries.get(&index).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn entries(&self) -> impl Iterator<Item = (u64, &Rational)> {
        self.entries.iter().map(|(&i, x)| (i, x))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut v = self.clone();
        for (&i, x) in &other.entries {
            v.add_at(i, x.clone());
        }
        v
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            entries: self.entries.iter().map(|(&i, x)| (i, x * c)).collect(),
        }
    }

    /// True when `other = c * self` or `self = c * other` for some rational c.
    pub fn is_parallel_to(&self, other: &Self) -> bool {
        if self.is_zero() || other.is_zero() {
            return true;
        }
        let (&i0, x0) = self.entries.iter().next().expect("nonzero");
        let y0 = other.get(i0);
        if y0.is_zero() {
            return false;
        }
        let c = y0 / x0;
        self.scale(&c) == *other
    }
}

/// `v0^2 + v1^2 - sum of the other squares`, exactly.
pub fn iota_value(v: &SparseRationalVector) -> Rational {
    v.entries.iter().fold(Rational::zero(), |acc, (&i, x)| {
        let sq = x * x;
        if i <= 1 {
            acc + sq
        } else {
            acc - sq
        }
    })
}

/// `B(u, w) = iota(u + w) - iota(u) - iota(w)`.
pub fn polarization(u: &SparseRationalVector, w: &SparseRationalVector) -> Rational {
    iota_value(&u.add(w)) - iota_value(u) - iota_value(w)
}

/// Two independent, isotropic, mutually orthogonal vectors: `e0 + e2` and
/// `e1 + e3`. The form vanishes on their whole rational span.
pub fn witt_witness() -> (SparseRationalVector, SparseRationalVector) {
    (
        SparseRationalVector::unit(0).add(&SparseRationalVector::unit(2)),
        SparseRationalVector::unit(1).add(&SparseRationalVector::unit(3)),
    )
}

/// Space-separated `index:numerator/denominator`, indices ascending.
impl fmt::Display for SparseRationalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .entries
            .iter()
            .map(|(i, x)| format!("{i}:{}/{}", x.numer(), x.denom()))
            .collect();
        f.write_str(&parts.join(" "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("bad vector entry `{0}`; expected index:numerator/denominator")]
pub struct VectorParseError(pub String);

impl FromStr for SparseRationalVector {
    type Err = VectorParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut out = Self::zero();
        for tok in s.split_whitespace() {
            let bad = || VectorParseError(tok.to_string());
            let (idx, frac) = tok.split_once(':').ok_or_else(bad)?;
            let idx: u64 = idx.parse().map_err(|_| bad())?;
            let (n, d) = frac.split_once('/').unwrap_or((frac, "1"));
            let n: BigInt = n.parse().map_err(|_| bad())?;
            let d: BigInt = d.parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            out.add_at(idx, Rational::new(n, d));
        }
        Ok(out)
    }
}
