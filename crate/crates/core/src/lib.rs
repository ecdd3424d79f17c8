//! Computational topology of edge-colored graphs.
//!
//! A `(d+1)`-colored graph encodes a `d`-dimensional pseudomanifold. This
//! crate computes its regular genera and Gurau degree, performs dipole
//! moves, analyzes the singular structure of 4-colored graphs, enumerates
//! graphs exhaustively up to isomorphism, and counts Feynman graphs of
//! tensor trace invariants by G-degree.
//!
//! The `parallel` feature (on by default) runs enumeration and Wick sums on
//! rayon; without it the same code runs sequentially.

pub mod canon;
pub mod colorset;
pub mod enumerate;
pub mod graph;
pub mod half;
pub mod moves;
pub mod par;
pub mod perm;
pub mod residue;
pub mod tensor;
pub mod topology;
pub mod triangulation;

pub use canon::{canonical_code, CanonMode, CanonicalCode, Canonizer};
pub use colorset::ColorSet;
pub use graph::{order_two_graph, torus_gem, ColoredGraph, GraphError};
pub use half::HalfInteger;
pub use topology::{SurfaceType, TopologyError, Verdict};
