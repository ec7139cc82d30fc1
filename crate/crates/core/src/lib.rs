//! Critical edges of matchings in labeled complete graphs, red/blue
//! alternating structures, and the numerical bound machinery for finding
//! cliques and dense subgraphs of `G(n, 1/2)` with a limited number of
//! adaptive edge queries.
//!
//! Modules:
//!
//! * [`labeled_graphs`]: labelings of `K_N`, matchings, critical-edge counts,
//!   switches, exhaustive minimisers, the weighted switch local search and the
//!   extremal labelings.
//! * [`alternating`]: red matchings with blue edges, alternating cycle and
//!   path checks, the extremal constructions and an exhaustive `beta_k(x)`.
//! * [`partition_bounds`]: the per-label path caps `c_l`, `S_l`, the resulting
//!   upper bound on `gamma(l)`, the constrained quadratic optimum and the
//!   feasibility check for the label weights.
//! * [`bound_calc`]: closed-form clique bounds and the implicit dense-subgraph
//!   system with its root finders.
//! * [`simulator`]: a lazily sampled `G(n, 1/2)` with a query ledger, round
//!   enforcement and illustrative search strategies.

pub mod alternating;
pub mod bound_calc;
mod ell;
pub mod labeled_graphs;
pub mod partition_bounds;
pub mod simulator;

pub use ell::{Ell, ParseEllError};

/// Exact rational used where the arithmetic must not round.
pub type BigRational = num_rational::BigRational;

/// Default cap on `N` for exhaustive matching enumeration.
pub const DEFAULT_BRUTE_CAP: usize = 16;
