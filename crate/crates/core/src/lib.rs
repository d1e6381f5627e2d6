#![no_std]

//! Exact search and verification for Turán-type problems on q-graphs.
//!
//! A q-graph on `[n]` is a set of weighted edges `(u, v, a, b)`: the edge
//! `{u, v}` carries weight `a` at `u` and `b` at `v`, both in `1..=q`. A set
//! of q-edges is an *s-copy* of an ordinary graph `F` when its supports form
//! a copy of `F` and, at every vertex, the weights of any two incident
//! q-edges add up to at least `s`.
//!
//! This crate is allocation-only (`alloc`) and performs no IO. File formats,
//! the command line and thread-parallel drivers live in the `qturan` crate.

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod bitset;
pub mod constructions;
pub mod detect;
mod error;
pub mod extremal;
pub mod pattern;
pub mod qgraph;
pub mod robust;
pub mod wstar;

pub use constructions::{Partition, TreeVariant};
pub use detect::{contains_s_copy, find_s_copies, Embedding};
pub use error::Error;
pub use extremal::{
    extremal_number, forbidden_configs, ordinary_turan, verify_free, Budget, ForbiddenHypergraph, SearchResult,
    SearchStatus,
};
pub use pattern::PatternGraph;
pub use qgraph::{full_qgraph, low_layer, s_sum_intersection, support_graph, DiGraph, QEdge, QGraph, SlicePair};
pub use robust::{chromatic_number, robust_chromatic, Caps, RemovalSet};
pub use wstar::WeightFunction;

/// `C(n, 2)`.
pub const fn pairs(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// `⌈(q+1)/2⌉`, the smallest weight counted as "low layer".
pub const fn low_threshold(q: u32) -> u32 {
    (q + 2) / 2
}
