//! Exact rational polyhedral geometry and the unit circle of directions.

pub mod polyhedron;
pub mod sphere;

pub use polyhedron::{Constraint, Polyhedron, Rel};
pub use sphere::{ArcPiece, CircleSet, Dir, Item};
