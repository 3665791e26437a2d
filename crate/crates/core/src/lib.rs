//! Heuristic solver for the minimum directed feedback vertex set problem.
//!
//! The pipeline greedily builds a solution while applying eight reduction
//! rules, prunes redundant vertices in reverse insertion order, and then
//! improves the result by repeatedly freeing a random part of the best
//! solution and re-solving the induced subproblem.

pub mod cli;
pub mod graph;
pub mod instance;
pub mod oracle;
pub mod pace;
pub mod reductions;
pub mod solver;
pub mod stop;

pub use graph::{TriGraph, VertexId};
pub use instance::Instance;
pub use solver::{solve, BestSolution, ScoringMode, SolveOutcome, SolverConfig};
pub use stop::Stop;
