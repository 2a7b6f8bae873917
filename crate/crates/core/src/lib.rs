//! GKM graphs over `Z[x1, ..., xr]`, their equivariant cohomology as a ring
//! of vertex-indexed polynomial families, and the reconstruction of a graph
//! from its cohomology ring.
//!
//! The modules build on each other in order: [`poly`] and [`lattice`] do the
//! exact integer algebra, [`graph`] holds the combinatorial data,
//! [`transport`] searches connection-like structures, [`cohomology`]
//! computes graded bases and Thom classes, and [`rigidity`] compares graphs
//! and algebras.

pub mod cohomology;
pub mod error;
pub mod fixtures;
pub mod graph;
pub mod lattice;
pub mod poly;
pub mod rigidity;
pub mod transport;

pub use error::{Error, Result};
pub use graph::{DartId, GkmGraph, GraphFile, VertexId};
pub use poly::{IntPolynomial, LinearForm};
