//! Workbench for locally finite generalized quadrangle arguments.
//!
//! The crate is split along the same lines as the command-line tool:
//!
//! * [`incidence`] holds finite point-line incidence structures and the
//!   generalized quadrangle axiom checker (orders, duals, perps, spans,
//!   sub-quadrangles).
//! * [`classical`] builds the concrete geometries: symplectic quadrangles
//!   `W(q)`, grids, and the rational quadratic form `X0^2 + X1^2 - sum Xi^2`.
//! * [`feasibility`] decides the classical parameter conditions for
//!   generalized polygons and projective planes.
//! * [`substructures`] searches and verifies ovoids, spreads, automorphism
//!   groups and indiscernible line families.
//! * [`order`] works with finitely presented subsets of the rationals and
//!   builds exact piecewise-linear order automorphisms of `(Q, <=)`.
//!
//! Heavy kernels fan out through [`par`], which uses rayon when the
//! `parallel` feature is enabled and degrades to plain iterators otherwise.
//! Results never depend on the thread count.

pub mod classical;
pub mod feasibility;
pub mod incidence;
pub mod order;
pub mod par;
pub mod substructures;

pub use num_rational::BigRational;

/// Exact rational used throughout the order engine.
pub type Rational = BigRational;
