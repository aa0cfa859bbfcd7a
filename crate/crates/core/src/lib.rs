//! Minimum-turn Hamiltonian tours of even polyominoes.
//!
//! An even polyomino `P = 2S` is a hole-free union of aligned 2x2 cell
//! blocks. This crate builds tours (Hamiltonian cycles of the adjacency
//! graph on cell centers) and pseudotours (2-factors), analyzes them through
//! their turn graphs, and reduces the turn count of any irregular tour by a
//! downward cycle-deletion phase followed by an upward flip-stitching phase.
//! A brute-force oracle exhaustively verifies the structural claims on all
//! small instances.

pub mod geometry;
pub mod oracle;
pub mod pseudotour;
pub mod region;
pub mod render;
pub mod transform;
pub mod turngraph;

#[doc(hidden)]
pub mod testutil;

pub use geometry::{parity_class, DiagEdge, GPoint, ParityClass};
pub use pseudotour::{Pseudotour, TourStats, Turn};
pub use region::{Cell, Polyomino};
pub use turngraph::TurnGraph;
