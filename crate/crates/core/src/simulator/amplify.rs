use rayon::prelude::*;
use serde::Serialize;

use super::graph::budget_for;
use super::{greedy_clique, run_l_adaptive, RevealedGraph, RoundGreedy, RunOptions, RunResult, SimError};

const GOLDEN: u64 = 0x9e37_79b9_7f4a_7c15;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BaseStrategy {
    /// [`greedy_clique`], fully adaptive.
    Greedy,
    /// [`RoundGreedy`] in `ell` rounds.
    RoundGreedy,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlockSummary {
    pub index: usize,
    pub offset: usize,
    pub size: usize,
    pub budget: u64,
    pub clique_size: usize,
    pub is_clique: bool,
    pub queries_used: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AmplifyResult {
    /// Best verified block result, vertices as global ids.
    pub best: RunResult,
    pub best_block: usize,
    pub blocks: Vec<BlockSummary>,
    pub total_queries: u64,
    /// `2^{−b}` for `b` blocks, if each block succeeds with probability 1/2.
    pub failure_heuristic: f64,
}

/// Consecutive blocks, `max(1, round(log₂ n))` of them (at most `n/2`); the
/// remainder goes to the first block.
pub fn block_sizes(n: usize) -> Vec<usize> {
    let b = ((n as f64).log2().round() as usize).clamp(1, (n / 2).max(1));
    let mut sizes = vec![n / b; b];
    sizes[0] += n % b;
    sizes
}

/// Runs the base strategy independently on each block of a vertex partition
/// of one `G(n, 1/2)` and keeps the largest verified clique. Block `i`
/// shuffles with seed `seed + i·φ`, so block 0 reuses `seed`.
pub fn amplify(
    base: BaseStrategy,
    n: usize,
    seed: u64,
    delta: f64,
    ell: usize,
    opts: RunOptions,
) -> Result<AmplifyResult, SimError> {
    if n < 2 {
        return Err(SimError::TooFewVertices(n));
    }
    let sizes = block_sizes(n);
    let offsets: Vec<usize> = sizes
        .iter()
        .scan(0, |acc, &s| Some(std::mem::replace(acc, *acc + s)))
        .collect();
    let runs: Vec<Result<RunResult, SimError>> = sizes
        .par_iter()
        .zip(offsets.par_iter())
        .enumerate()
        .map(|(i, (&size, &offset))| {
            let order_seed = seed.wrapping_add((i as u64).wrapping_mul(GOLDEN));
            let mut g = RevealedGraph::block(size, seed, offset, order_seed)?;
            match base {
                BaseStrategy::Greedy => {
                    if !(0.0..=2.0).contains(&delta) {
                        return Err(SimError::BadDelta(delta.to_string()));
                    }
                    greedy_clique(&mut g, budget_for(size, delta), opts)
                }
                BaseStrategy::RoundGreedy => run_l_adaptive(&mut g, &mut RoundGreedy::new(opts), delta, ell, opts),
            }
        })
        .collect();
    let runs = runs.into_iter().collect::<Result<Vec<_>, _>>()?;
    let blocks: Vec<BlockSummary> = runs
        .iter()
        .enumerate()
        .map(|(i, r)| BlockSummary {
            index: i,
            offset: offsets[i],
            size: sizes[i],
            budget: r.budget,
            clique_size: r.vertices.len(),
            is_clique: r.is_clique,
            queries_used: r.queries_used,
        })
        .collect();
    let score = |r: &RunResult| (r.is_clique && r.within_budget, r.vertices.len());
    let mut best_block = 0;
    for i in 1..runs.len() {
        if score(&runs[i]) > score(&runs[best_block]) {
            best_block = i;
        }
    }
    let mut best = runs[best_block].clone();
    for v in &mut best.vertices {
        *v += offsets[best_block];
    }
    Ok(AmplifyResult {
        best,
        best_block,
        total_queries: runs.iter().map(|r| r.queries_used).sum(),
        failure_heuristic: 0.5f64.powi(sizes.len() as i32),
        blocks,
    })
}
