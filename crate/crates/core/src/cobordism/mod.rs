//! Cobordisms between diagrams and their chain maps.

pub mod maps;
pub mod moves;
pub mod movie;
pub mod verify;

pub use maps::{elementary_chain_map, map_between};
pub use moves::{apply_move, ElementaryMove, Mark, Outcome, Site};
pub use movie::{bundled_movie, bundled_movies, evaluate_movie, Movie, Placement, ScriptError};
