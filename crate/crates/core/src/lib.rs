//! Spectral and edge-extremal problems for star-path forests: graph
//! constructions, Perron computations, containment tests, closed-form Turán
//! values and exhaustive small-graph search.

mod bits;
pub mod canon;
pub mod containment;
pub mod error;
pub mod families;
pub mod graph;
pub mod numfmt;
pub mod pattern;
pub mod search;
pub mod spectral;
pub mod turan;

pub use error::{Error, Result};
pub use graph::{graph6_decode, graph6_encode, Graph, VertexSet};
pub use pattern::ForestPattern;
