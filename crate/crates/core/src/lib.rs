//! Combinatorial engine for the ideal structure of graph C*-algebras.
//!
//! Graphs have finitely many vertices and edge bundles of multiplicity in
//! ℕ ∪ {ω}. On top of the [`graph`] model the crate computes maximal tails
//! and clusters ([`tails`]), admissible pairs and their classification
//! ([`ideals`]), and the prime and primitive ideal spaces with their
//! topologies ([`topology`]). [`generators`] supplies fixtures and random
//! graphs, and [`format`] reads and writes graphs.

pub mod error;
pub mod format;
pub mod generators;
pub mod graph;
pub mod ideals;
pub mod tails;
pub mod topology;

pub use error::{Error, Result};
pub use format::{emit_dot, emit_graph, parse_graph, ParseError};
pub use graph::{
    Bundle, BundleId, CycleCountClass, Directedness, Graph, GraphBuilder, Multiplicity, Vertex,
    VertexKind, VertexSet,
};
pub use ideals::{AdmissiblePair, IdealClass};
pub use topology::{Side, SpecPoint, SpecSpace, VerifyOptions};
