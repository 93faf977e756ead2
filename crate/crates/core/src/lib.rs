//! Cooperative colorings of graph families.
//!
//! A family of graphs `G_1..G_k` over a universal vertex set has a *cooperative
//! coloring* when every vertex can be given an index `i` of a graph containing
//! it so that the vertices given `i` are independent in `G_i`. This crate
//! provides:
//!
//! * [`graph`]: families, edge-colored multigraphs, validators, translations
//!   between the family / adapted-coloring / independent-transversal views, and
//!   instance I/O.
//! * [`construction`]: the recursive edge-colored graphs whose color classes are
//!   star forests with no cooperative coloring.
//! * [`exhaustive`]: exact search with UNSAT certification, q-ary tree
//!   subgraph search and exact treedepth.
//! * [`solvers`]: randomized resampling solvers (local-lemma baseline and the
//!   inventory partition procedure) and instance generators.
//! * [`decomposition`]: vertex splits used by the partition procedure.

pub mod construction;
pub mod decomposition;
pub mod error;
pub mod exhaustive;
pub mod graph;
pub mod solvers;

pub use error::{Error, Result};
