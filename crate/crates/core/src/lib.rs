//! Neighborhood-balanced `k`-colorings of graphs.
//!
//! A `k`-coloring is neighborhood-balanced when every vertex sees each of the
//! `k` colors equally often among its neighbors. This crate provides:
//!
//! - [`verify`]: the balance check, diagnostic counts and necessary conditions;
//! - [`families`]: explicit colorings for circulant, Hamming, multipartite and
//!   cycle graphs, with reasoned refusals for uncolorable members;
//! - [`compose`]: graph products, joins, the induced-subgraph embedding and
//!   vertex addition, each transferring colorings;
//! - [`unions`]: unions of copies glued along a vertex subset;
//! - [`solver`]: exact backtracking search, a brute-force oracle and CNF export;
//! - [`reduction`]: house gadgets and the equal-sum-subsets reduction;
//! - [`io`] and [`dot`]: text formats and Graphviz output.

pub mod compose;
pub mod dot;
pub mod error;
pub mod families;
pub mod graph;
pub mod io;
pub mod reduction;
pub mod solver;
pub mod unions;
pub mod verify;

pub use error::{Error, Refusal, Result, Rule};
pub use graph::{Graph, InducedSubgraph, VertexSet};
pub use verify::{BalanceReport, Coloring, ColoredGraph, NecessityReport, Verdict};
