//! Labelings of `K_N`, matchings, and critical edges.
//!
//! An edge `uv` outside a matching is *critical* when some matching edge
//! covering `u` or `v` carries a strictly larger label. The quantity of
//! interest is the number of critical edges divided by `C(2M, 2)` for a
//! matching of size `M`, minimised over matchings and maximised over
//! labelings.
//!
//! Vertices are `0..n` in the API; the text formats are 1-based.

mod construction;
mod critical;
mod labeling;
mod local_search;
mod matching;
mod search;

pub use construction::{make_construction, Construction, ConstructionKind};
pub use critical::{count_critical, cross_class_critical_pairs, is_critical, is_critical_covered, CriticalReport};
pub use labeling::{pair_count, pair_index, EdgeLabeling};
pub use local_search::{default_epsilon, label_weight, switch_local_search, LocalSearchOutcome};
pub use matching::{e_switch, m_pair, Edge, Matching};
pub use search::{anti_lex_min_matching, min_critical_matching_bruteforce};

use crate::Ell;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LabelError {
    #[error("vertex {vertex} out of range for N = {n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("label {label} on pair ({u}, {v}) outside 1..={max}")]
    LabelOutOfRange { u: usize, v: usize, label: u32, max: u32 },
    #[error("expected {expected} labels, got {got}")]
    LabelCount { expected: usize, got: usize },
    #[error("ranks of an unbounded labeling must be a permutation of 1..={0}")]
    NotAPermutation(usize),
    #[error("labeling needs at least {min} vertices, got {n}")]
    TooFewVertices { n: usize, min: usize },
    #[error("invalid matching: {0}")]
    InvalidMatching(String),
    #[error("edge ({0}, {1}) belongs to the matching")]
    EdgeInMatching(usize, usize),
    #[error("endpoint {0} is not covered by the matching")]
    EndpointUncovered(usize),
    #[error("instance too large: N = {n} exceeds the brute-force cap {cap}")]
    InstanceTooLarge { n: usize, cap: usize },
    #[error("matching size {size} does not fit in K_{n}")]
    SizeTooLarge { size: usize, n: usize },
    #[error("operation requires an unbounded (rank) labeling, got {0} labels")]
    NotUnbounded(Ell),
    #[error("label {t} outside 1..={ell}")]
    LabelOutsideRange { t: u32, ell: u32 },
    #[error("epsilon {epsilon} fails the weight feasibility check for {ell} labels")]
    EpsilonRejected { epsilon: String, ell: u32 },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}
