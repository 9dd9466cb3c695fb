//! FirmCore and FirmD-Core decompositions of multilayer graphs.
//!
//! A multilayer graph shares one node set across several layers, each layer
//! holding its own intra-layer edge set. The `(k, λ)`-FirmCore is the maximal
//! subgraph in which every node has induced degree at least `k` in at least
//! `λ` layers; its directed counterpart, the `(k, r, λ)`-FirmD-Core, is an
//! `(S, T)`-induced subgraph constrained by out-degrees on `S` and in-degrees
//! on `T`. On top of the decompositions this crate provides approximation
//! algorithms for the (directed) multilayer densest-subgraph problem, the
//! exact max-min-degree solver, and quasi-clique search-space pruning.

pub mod density;
pub mod error;
pub mod firmcore;
pub mod firmdcore;
pub mod mlgraph;
pub mod oracle;
pub mod parallel;

pub use error::GraphError;
pub use mlgraph::{DegreeMatrix, DirectedMultilayerGraph, MultilayerGraph, NodeSet};
