//! Ovoids, spreads, automorphism groups and indiscernible line families of
//! finite incidence structures.

mod automorphism;
mod family;
mod indiscernible;
mod profile;

pub use automorphism::{
    automorphism_group, automorphism_group_with, map_tuple, stabilizer, AutomorphismGroup, ElementSet,
    FiniteAutomorphism, GroupError, GroupOptions, StabilizerMode, TupleError,
};
pub use family::{
    classify_substructure, search_substructures, search_substructures_with, SearchKind, SearchMode, SearchOutcome,
    SearchStatus, SubstructureError, SubstructureKind, SubstructureVerdict, SubstructureWitness,
};
pub use indiscernible::{
    is_indiscernible, IndiscernibilityError, IndiscernibilityOptions, IndiscernibilityVerdict, OrderedLineFamily,
};
pub use profile::{ovoid_projection_profile, CoverageRow, ProfileError, ProjectionProfile};
