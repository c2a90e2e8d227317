//! Local search for the minimum weight dominating set problem.
//!
//! The solver combines two-level configuration checking (a vertex removed
//! from the candidate solution may re-enter only after something within
//! distance 2 of it changes) with a frequency-weighted scoring function and a
//! one-step forbid list on removals. Ablation variants (one-level checking,
//! legacy greedy scores, early break) share the same machinery.
//!
//! Modules:
//! - [`graph`]: immutable weighted graphs, DIMACS and edge-list parsers, weighting schemes
//! - [`state`]: the incrementally maintained search state and exact [`state::Score`]s
//! - [`cc`]: configuration-checking strategies
//! - [`scoring`]: legacy score functions
//! - [`solver`]: construction, selection rules and the search loop
//! - [`oracle`]: validation and exact solvers for small graphs
//! - [`generator`]: seeded random connected instances
//! - [`bench`]: multi-run harness and report formats
//! - [`cli`]: the `domlite` command line

pub mod bench;
pub mod cc;
pub mod cli;
pub mod error;
pub mod generator;
pub mod graph;
pub mod oracle;
pub mod scoring;
pub mod solver;
pub mod state;

pub use cc::CcStrategy;
pub use error::{Error, Result};
pub use graph::{apply_weighting, Graph, WeightScheme, WeightedGraph};
pub use scoring::{LegacyScoreKind, ScoreKind};
pub use solver::{solve, SolveResult, SolverConfig, Variant};
pub use state::{Score, SearchState};
