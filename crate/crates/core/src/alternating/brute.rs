use super::{has_alternating_cycle, mate, max_blue_in_alternating_path, AltError, Edge, RedBlueGraph};

/// Default cap on candidate blue pairs `2x(x−1)`; admits `x ≤ 3`.
pub const DEFAULT_BETA_PAIR_CAP: usize = 12;

/// Largest number of blue edges on `x` red edges with no alternating cycle and
/// no alternating path holding `k` or more blue edges, by exhaustive
/// include/exclude search. Feasibility is closed under deleting blue edges,
/// so infeasible partial sets are cut immediately.
pub fn beta_bruteforce(k: usize, x: usize, pair_cap: usize) -> Result<usize, AltError> {
    if k < 1 {
        return Err(AltError::KTooSmall { k, min: 1 });
    }
    let pairs = 2 * x * x.saturating_sub(1);
    if pairs > pair_cap {
        return Err(AltError::InstanceTooLarge { pairs, cap: pair_cap });
    }
    let n = 2 * x;
    let cand: Vec<Edge> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|&(u, v)| mate(u) != v)
        .collect();
    let mut best = 0;
    let mut chosen = Vec::new();
    search(k, x, &cand, 0, &mut chosen, &mut best)?;
    Ok(best)
}

fn feasible(k: usize, x: usize, blue: &[Edge]) -> Result<bool, AltError> {
    let g = RedBlueGraph::new(x, blue.iter().copied())?;
    if has_alternating_cycle(&g) {
        return Ok(false);
    }
    Ok(max_blue_in_alternating_path(&g)? < k)
}

fn search(
    k: usize,
    x: usize,
    cand: &[Edge],
    i: usize,
    chosen: &mut Vec<Edge>,
    best: &mut usize,
) -> Result<(), AltError> {
    *best = (*best).max(chosen.len());
    if i == cand.len() || chosen.len() + (cand.len() - i) <= *best {
        return Ok(());
    }
    chosen.push(cand[i]);
    if feasible(k, x, chosen)? {
        search(k, x, cand, i + 1, chosen, best)?;
    }
    chosen.pop();
    search(k, x, cand, i + 1, chosen, best)
}
