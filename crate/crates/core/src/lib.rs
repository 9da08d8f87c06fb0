//! Exact automorphism group orders of small simple graphs, together with a
//! family of upper bounds on that order.
//!
//! The crate is `no_std` and only needs `alloc`. Everything here is a pure
//! function of an immutable [`Graph`]: IO, file formats and the command line
//! live in the `autbound` companion crate.
//!
//! Module map:
//!
//! * [`graph`]: adjacency bitrows, degree statistics, connectivity, named families.
//! * [`aut`]: partition-refinement automorphism search and a brute-force oracle.
//! * [`trees`]: greedy, BFS and DFS spanning trees, exact tree automorphism counts,
//!   the product estimates used by the tree-based bounds.
//! * [`embeddings`]: brute-force labeled and unlabeled copy counts of spanning subgraphs.
//! * [`structure`]: path covering number, Hamiltonian paths, the `K_{1,m}`-free parameter.
//! * [`bounds`]: evaluation, gating and comparison of every bound.
//! * [`corpus`]: isomorph-free enumeration of small connected graphs.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod aut;
pub mod bounds;
pub mod corpus;
pub mod embeddings;
mod error;
pub mod graph;
pub mod magnitude;
mod math;
pub mod structure;
pub mod trees;

pub use aut::{aut_order, aut_order_naive, canonical_form, orbit_size, AutResult};
pub use bounds::{compose_report, BoundId, BoundReport, BoundValue, CorollaryMode, ReportOptions};
pub use error::{Error, Result};
pub use graph::{DegreeStats, Family, Graph, MAX_VERTICES};
pub use magnitude::Magnitude;
pub use trees::{GreedyTree, SpanningTree, TieBreak};
