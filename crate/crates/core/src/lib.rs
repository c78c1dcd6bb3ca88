//! Exact H-coloring counts and extremal search.
//!
//! `hom(G, H)` is the number of maps `V(G) -> V(H)` sending edges to edges
//! (loops on `H` allowed). This crate counts these exactly, provides
//! closed forms for the graph families that matter for extremal questions
//! over connected graphs with minimum degree δ, and checks the bounds and
//! constructions around the complete bipartite graph `K_{δ,n-δ}` by
//! exhaustive search at small sizes.

pub mod chrompoly;
pub mod cli;
pub mod error;
pub mod extremal;
pub mod families;
pub mod graph;
pub mod homcount;

pub use error::{Error, Result};
pub use graph::Graph;
pub use homcount::HomCount;
