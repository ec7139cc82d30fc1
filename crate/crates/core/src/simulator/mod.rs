//! Query-model harness: a lazily sampled `G(n, 1/2)`, round and budget
//! bookkeeping, two illustrative clique strategies, and block amplification.
//!
//! Vertices are `0..n`; transcripts use the same ids.

mod amplify;
mod graph;
mod strategy;

pub use amplify::{amplify, block_sizes, AmplifyResult, BaseStrategy, BlockSummary};
pub use graph::{budget_for, new_instance, QueryRecord, RevealedGraph};
pub use strategy::{greedy_clique, run_l_adaptive, RoundContext, RoundGreedy, RunOptions, RunResult, Strategy};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SimError {
    #[error("need at least 2 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("self-loop query at vertex {0}")]
    SelfLoop(usize),
    #[error("vertex {vertex} out of range for n = {n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("adaptivity violation: pair ({u}, {v}) was read in round {round}, the round that queries it")]
    AdaptivityViolation { u: usize, v: usize, round: usize },
    #[error("budget exceeded: more than {budget} queries")]
    BudgetExceeded { budget: u64 },
    #[error("delta = {0} outside [0, 2]")]
    BadDelta(String),
    #[error("need at least one round")]
    NoRounds,
}
