//! Finitely presented subsets of the rationals and exact order
//! automorphisms of `(Q, <=)`.
//!
//! A [`Presentation`] is a finite union of points, dense intervals and
//! dyadic sequences `q_n = b - (b - a) / 2^n`. On top of it the module
//! computes the two class decompositions used to pick a construction
//! ([`sim_classes`], [`asymp_classes`], [`select_case`]) and builds
//! piecewise-linear automorphisms that move or grow the set.

mod automorphism;
mod case;
mod classes;
mod construct;
mod image;
mod presentation;
mod verify;

pub use automorphism::{AnchorError, OrderAutomorphism};
pub use case::{select_case, Case, CaseError, CaseSelection};
pub use classes::{
    asymp_classes, sim_classes, sim_classes_of_complement, AsympClass, AsympDecomposition, ClassKind, EndpointKind,
    SimClass, SimDecomposition, TransitivityViolation,
};
pub use construct::{
    alpha_backforth, alpha_boxes, alpha_infinite_class, alpha_move_interior, order_isomorphism, simplest_between,
    BoxesConstruction, ConstructionError, GrowthReport,
};
pub use image::{image_presentation, ImageError};
pub use presentation::{
    parse_rational, Atom, Bound, Direction, DyadicSeq, ParsePresentationError, Presentation, PresentationError,
};
pub use verify::{
    verify_automorphism, verify_automorphism_with, CheckOutcome, Contract, VerificationReport, SAMPLE_COUNT,
};
