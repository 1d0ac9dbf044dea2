pub mod explore;
pub mod lattice;
pub mod models;
pub mod star;

pub use explore::{bfs_explore, Exploration};
pub use lattice::{canonicalize, gl_adjacent, pgl2_neighbors, LocalContext, Vertex};
pub use star::{TreeModel, TreeVertex};
