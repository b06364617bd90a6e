//! Exact-arithmetic toolkit for the edge expansion of graphs of
//! 0/1-polytopes.
//!
//! The crate computes 1-skeletons of 0/1-polytopes through an exact
//! rational LP adjacency oracle, brute-forces edge expansion with cut
//! certificates, builds the canonical lazy random walk and its eigenvalue
//! sandwich, constructs multicommodity flow certificates from fractional
//! wall-matchings and from uniquely edge-cube spanned walls, generates the
//! standard polytope families, and classifies small-dimensional
//! 0/1-polytopes up to cube isometry.
//!
//! Everything here is `no_std` (with `alloc`); IO, file formats, the CLI,
//! and parallel drivers live in the companion `cubex` crate.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod cubespan;
pub mod enumerate;
pub mod error;
pub mod expansion;
pub mod families;
pub mod graph;
pub mod lp;
pub mod maxflow;
pub mod polytope;
pub mod rat;
pub mod spectral;
pub mod walls;

pub use error::{Error, Result};
pub use expansion::{CutCertificate, FlowField};
pub use graph::{Graph, NodeSet};
pub use polytope::{CanonicalSignature, Vertex01, ZeroOnePolytope};
pub use rat::Rat;
pub use walls::{Sigma, Wall};
