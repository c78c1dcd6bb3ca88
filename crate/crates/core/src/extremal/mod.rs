//! Isomorphism-free enumeration of connected graphs with a minimum degree,
//! exhaustive maximizer searches, and the structural tools used to compare
//! arbitrary members of the family against `K_{δ,n-δ}`.

pub mod canon;
pub mod enumerate;
pub mod proof;
pub mod search;

pub use canon::{canonical_form, canonical_graph, is_isomorphic, CanonicalForm};
pub use enumerate::{connected_nonregular_targets, enumerate_graphs, enumerate_targets, Family};
pub use proof::{
    edge_addition_counts, edge_addition_test, max_common_core, structural_trace,
    structural_upper_bound, CommonCore, EdgeAdditionReport, StructuralBound,
};
pub use search::{find_maximizers, scan_family, search_family, Maximizer, SearchReport};
