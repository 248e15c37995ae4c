//! Picks the automorphism construction that applies to a presented set.

use std::fmt;

use thiserror::Error;

use super::classes::{asymp_classes, sim_classes, sim_classes_of_complement, ClassKind, SimDecomposition};
use super::presentation::{Atom, Bound, Presentation};
use crate::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Case {
    OnlySingletons,
    InfiniteNonSingleton,
    FiniteNonSingletonGe3,
    AllSize2WithHatNonSingletons,
    AllSize2NoHatNonSingletons,
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Case::OnlySingletons => "only-singletons",
            Case::InfiniteNonSingleton => "infinite-non-singleton",
            Case::FiniteNonSingletonGe3 => "finite-non-singleton-ge3",
            Case::AllSize2WithHatNonSingletons => "all-size-2-complement-has-non-singletons",
            Case::AllSize2NoHatNonSingletons => "all-size-2-complement-all-singletons",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CaseError {
    #[error("the set is empty")]
    Empty,
    #[error("the set is all of Q; no automorphism can grow it")]
    GridCase,
}

#[derive(Clone, Debug)]
pub struct CaseSelection {
    pub case: Case,
    /// Open window `(lo, hi)` the back-and-forth works inside. At atom
    /// granularity no narrowing step removes anything, so this is the span
    /// of the set.
    pub narrowed_interval: Option<(Bound, Bound)>,
    /// Points outside the set where two `≍` interval classes meet.
    pub shared_endpoints: Vec<Rational>,
    pub notes: Vec<String>,
    pub classes: SimDecomposition,
    pub complement_classes: SimDecomposition,
}

pub fn select_case(sv: &Presentation) -> Result<CaseSelection, CaseError> {
    if sv.is_empty() {
        return Err(CaseError::Empty);
    }
    if sv.is_everything() {
        return Err(CaseError::GridCase);
    }
    let classes = sim_classes(sv);
    let complement_classes = sim_classes_of_complement(sv);
    let hat_non_singletons = complement_classes.non_singletons().count();

    let has = |pred: &dyn Fn(ClassKind) -> bool| classes.classes.iter().any(|c| pred(c.kind));
    let case = if has(&|k| k == ClassKind::InfiniteDiscrete) {
        Case::InfiniteNonSingleton
    } else if has(&|k| matches!(k, ClassKind::FiniteDiscrete(n) if n >= 3)) {
        Case::FiniteNonSingletonGe3
    } else if has(&|k| k == ClassKind::FiniteDiscrete(2)) {
        if hat_non_singletons > 0 {
            Case::AllSize2WithHatNonSingletons
        } else {
            Case::AllSize2NoHatNonSingletons
        }
    } else {
        Case::OnlySingletons
    };

    let mut notes = Vec::new();
    let non_singletons = classes.non_singletons().count();
    notes.push(format!(
        "{} classes, {non_singletons} non-singleton; complement has {hat_non_singletons} non-singleton classes",
        classes.classes.len()
    ));

    let asymp = asymp_classes(sv);
    let shared_endpoints: Vec<Rational> = asymp.violations.iter().map(|v| v.shared.clone()).collect();
    for v in &asymp.violations {
        notes.push(format!(
            "{} ≍ {} ≍ {} but not {} ≍ {}: {} lies outside the set and is the point to move",
            v.left, v.shared, v.right, v.left, v.right, v.shared
        ));
    }
    for c in asymp.intervals().filter(|c| c.both_ends_in_complement()) {
        notes.push(format!("interval class with both ends outside the set: {c}"));
    }

    let narrowed_interval = matches!(case, Case::OnlySingletons | Case::AllSize2NoHatNonSingletons).then(|| {
        notes.push("narrowing read at atom granularity: window is the span of the set".into());
        span(sv)
    });

    Ok(CaseSelection {
        case,
        narrowed_interval,
        shared_endpoints,
        notes,
        classes,
        complement_classes,
    })
}

fn span(sv: &Presentation) -> (Bound, Bound) {
    let lo = sv.atoms().first().map_or(Bound::NegInf, Atom::infimum);
    let hi = sv
        .atoms()
        .iter()
        .map(|a| match a {
            Atom::Point(x) => Bound::Finite(x.clone()),
            Atom::Interval { hi, .. } => hi.clone(),
            Atom::Seq(s) => Bound::Finite(s.hi.clone()),
        })
        .max()
        .unwrap_or(Bound::PosInf);
    (lo, hi)
}
