//! Exact solvers for the minimum r-grouped dominating set problem.
//!
//! An r-grouped dominating set of a graph is a dominating set that splits
//! into pairwise disjoint *units*: vertex sets of size exactly `r`, each
//! inducing a connected subgraph. `r = 1` is ordinary domination, `r = 2`
//! is paired domination, and a single unit of size `r` is a connected
//! dominating set of size `r`.
//!
//! The crate provides, for graphs of up to 128 vertices:
//!
//! * [`graph`] — bitset-backed simple graphs, edge-list and DIMACS parsing;
//! * [`covers`] — exact minimum vertex covers and twin covers;
//! * [`solution`] — solution verification and a brute-force oracle;
//! * [`vcdp`] — dynamic programs over a vertex cover for `r = 1, 2, 3`
//!   and a nested-partition DP for general `r`;
//! * [`xp`] — a branching solver for the decision problem with few units;
//! * [`reductions`] — twin-edge stripping, the large-`r` constructive
//!   shortcut, per-component dispatch, and algorithm auto-selection;
//! * [`generators`] — instance generators (hardness-reduction constructions
//!   and seeded planted-parameter families);
//! * [`report`] — the machine-readable report emitted by the `gdom` CLI.

pub mod bitset;
pub mod cnf;
pub mod covers;
pub mod generators;
pub mod graph;
pub mod reductions;
pub mod report;
pub mod rng;
pub mod solution;
pub mod vcdp;
pub mod xp;

pub use bitset::{VertexSet, MAX_VERTICES};
pub use covers::{min_twin_cover, min_vertex_cover, twin_edges, verify_cover, CoverCertificate, CoverKind};
pub use graph::{Graph, GraphFormat, ParseError};
pub use reductions::{solve, solve_detailed, Algo, SolveOptions};
pub use solution::{
    brute_force_min_units, partition_into_connected_r_sets, verify_solution, GroupedSolution,
    SolveError, SolveOutcome, SolveStats, Status, Violation,
};
