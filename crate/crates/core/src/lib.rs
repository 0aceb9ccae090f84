//! Finite groups given by tables, permutations or products, their subgroup
//! structure, and the graph joining `x` and `y` when `<x, y>` falls outside a
//! class of groups.

pub mod analysis;
pub mod class;
pub mod corpus;
pub mod elemset;
pub mod error;
pub mod graph;
pub mod group;
pub mod linalg;
pub mod subgroup;

pub use elemset::ElementSet;
pub use error::{GroupError, Result};
pub use group::FiniteGroup;
