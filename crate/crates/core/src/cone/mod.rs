//! The cone of supermodular games: facets, extreme rays, extremality tests
//! and the face order.

mod dd;
mod extreme;
mod faces;
mod facets;
mod rays;

pub use dd::{double_description, Generators};
pub use extreme::{
    configuration_solution_space, configuration_system_rank, equality_pairs, extremality,
    games_solution_dim, is_extreme, is_extreme_via_games, EqualityPair, ExtremalityMethod,
    ExtremalityReport,
};
pub use faces::{core_structure, face_compare, CoreStructure, FaceRelation};
pub use facets::{
    facet_is_irredundant, facet_triples, perturbation_witness, separating_game, violated_triples,
    FacetTriple,
};
pub use rays::{cone_dimension, extreme_rays, game_rank, Coordinates};
