//! Finite lattices, their skeletons, and weighted double skeletons.

pub mod bipartite;
pub mod bitset;
pub mod dot;
pub mod enumerate;
pub mod error;
pub mod iso;
pub mod lattice;
pub mod poset;
pub mod reconstruct;
pub mod skeleton;
pub mod suites;
pub mod text;
pub mod tolerance;
pub mod wds;

pub use bitset::ElementSet;
pub use error::{Error, Result};
pub use lattice::{build_lattice, FiniteLattice};
pub use poset::Poset;
