//! Invariants and finite-index constructions for generalized
//! Baumslag–Solitar groups presented by labelled graphs.

pub mod analysis;
pub mod arith;
pub mod covering;
pub mod decision;
pub mod error;
pub mod fixtures;
pub mod format;
pub mod generate;
pub mod graph;
pub mod hitting_set;
pub mod plateau;
pub mod suite;
pub mod torus;

pub use error::{Error, Result};
pub use graph::{Dart, EdgeId, Label, LabelledGraph, VertexId};
