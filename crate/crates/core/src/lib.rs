//! Tree-depth, vertex rankings, uniqueness of top labels, and critical graphs.
//!
//! Graphs are simple and undirected, stored as adjacency bitmasks over at most
//! [`MAX_ORDER`] vertices. Exact algorithms have their own, smaller limits.

pub mod canon;
pub mod constructions;
pub mod criticality;
pub mod enumerate;
pub mod error;
pub mod graph;
pub mod graph6;
pub mod ranking;
pub mod solver;
pub mod uniqueness;

pub use canon::{are_isomorphic, canonical_form, canonical_labeling, CanonicalForm};
pub use constructions::{
    adjoin, edge_join, family_gk, family_q, family_r, generate_s_family, verify_construction,
    Attachment, ConstructionReport, ConstructionSpec, ConstructionTree, FamilyParams, SMember,
};
pub use criticality::{
    classify, conjecture_stress, critical_spanning_subgraph, find_critical_graphs,
    is_induced_subgraph_critical, is_minor_critical, is_subgraph_critical, CriticalityReport,
    MinorStep,
};
pub use enumerate::enumerate_connected_graphs;
pub use error::{Error, Result};
pub use graph::{Edge, Graph, VertexSet, MAX_ORDER};
pub use graph6::{emit_graph6, parse_graph6};
pub use ranking::{is_feasible_ranking, Ranking};
pub use solver::{td, tree_depth, tree_depth_capped, TreeDepthResult};
pub use uniqueness::{
    is_1_unique_graph, is_1_unique_vertex, is_t_unique_vertex, quotient_graph,
    star_clique_transform, uniqueness_profile, UniquenessProfile,
};
