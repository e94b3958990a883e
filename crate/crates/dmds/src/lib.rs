//! Heuristic and exact solvers for the minimum dominating set problem.
//!
//! The main entry point is [`search::solve`], a dual-mode stochastic local
//! search: each pass removes vertices picked by loss (one uniformly, one by
//! best-of-t sampling) and re-adds vertices picked by gain, alternating
//! between (2,1)- and (3,2)-swaps at random. Instances are first shrunk by
//! exact reduction rules ([`reduce`]) and seeded with the better of two
//! greedy constructions ([`construct`]). Small instances can be solved to
//! optimality with [`exact`].

pub mod bench;
pub mod cli;
pub mod construct;
pub mod exact;
pub mod graph;
pub mod reduce;
pub mod search;
pub mod state;

pub use graph::{Graph, VertexId, VertexSet};
pub use reduce::{apply_reductions, ReductionOutcome};
pub use search::{solve, RunReport, SearchConfig};
pub use state::SolverState;
