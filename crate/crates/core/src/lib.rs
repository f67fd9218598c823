//! Growth functions, BFS-layer separators, tree-decompositions and stack
//! layouts for graphs of linear growth.
//!
//! A graph has growth `f(r) <= c r` when every subgraph of radius at most
//! `r` has at most `c r` vertices. Such graphs have treewidth at most
//! `49c^2 + 30c` and stack-number at most `49c^2 + 30c + 1`. This crate
//! computes growth exactly, builds the separators behind that bound,
//! constructs and checks decompositions and layouts, and checks the bounds
//! instance by instance with exact rational arithmetic.

pub mod constructions;
pub mod decomposition;
pub mod error;
pub mod generators;
pub mod graph;
pub mod growth;
pub mod harness;
pub mod ratio;
pub mod separators;
pub mod stack;

pub use error::{Error, Result};
pub use graph::{Graph, Vertex};
pub use ratio::Rational;
