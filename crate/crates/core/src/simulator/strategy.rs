use std::collections::HashSet;

use num_rational::Ratio;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::graph::budget_for;
use super::{RevealedGraph, SimError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunOptions {
    /// Charge the final verification queries against the budget.
    pub count_verification: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        Self {
            count_verification: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RunResult {
    pub vertices: Vec<usize>,
    pub is_clique: bool,
    /// Present edges over `C(|S|, 2)`, from fully revealed pairs; `1` for
    /// fewer than two vertices.
    #[serde(serialize_with = "ser_ratio")]
    pub density: Ratio<u64>,
    /// Every logged query, verification included.
    pub queries_used: u64,
    pub verification_queries: u64,
    /// Query rounds, not counting the verification pass.
    pub rounds_used: usize,
    pub budget: u64,
    /// Charged queries stayed within the budget.
    pub within_budget: bool,
}

fn ser_ratio<S: serde::Serializer>(r: &Ratio<u64>, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

fn shuffled(n: usize, seed: u64) -> Vec<usize> {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    order
}

fn c2(k: u64) -> u64 {
    k * k.saturating_sub(1) / 2
}

/// Re-queries every pair inside `vertices` in the current round.
fn finish(
    g: &mut RevealedGraph,
    mut vertices: Vec<usize>,
    rounds_used: usize,
    budget: u64,
    opts: RunOptions,
) -> Result<RunResult, SimError> {
    let before = g.query_log().len() as u64;
    let mut edges = 0u64;
    for (i, &u) in vertices.iter().enumerate() {
        for &v in &vertices[i + 1..] {
            edges += u64::from(g.query(u, v)?);
        }
    }
    g.close_round();
    let pairs = c2(vertices.len() as u64);
    let queries_used = g.query_log().len() as u64;
    let verification_queries = queries_used - before;
    let charged = if opts.count_verification { queries_used } else { before };
    vertices.sort_unstable();
    Ok(RunResult {
        vertices,
        is_clique: edges == pairs,
        density: if pairs == 0 {
            Ratio::from_integer(1)
        } else {
            Ratio::new(edges, pairs)
        },
        queries_used,
        verification_queries,
        rounds_used,
        budget,
        within_budget: charged <= budget,
    })
}

/// Fully adaptive greedy: visit vertices in a seeded random order and keep
/// each one adjacent to every vertex kept so far. Each query is its own
/// round. Stops before a test could leave too little budget to verify the
/// enlarged clique.
pub fn greedy_clique(g: &mut RevealedGraph, budget: u64, opts: RunOptions) -> Result<RunResult, SimError> {
    let mut clique: Vec<usize> = Vec::new();
    let mut used = 0u64;
    let mut rounds = 0;
    for v in shuffled(g.n(), g.order_seed()) {
        let k = clique.len() as u64;
        let reserve = if opts.count_verification { c2(k + 1) } else { 0 };
        if used + k + reserve > budget {
            break;
        }
        let mut ok = true;
        for &u in &clique {
            used += 1;
            rounds += 1;
            let bit = g.query(u, v)?;
            g.close_round();
            if !bit {
                ok = false;
                break;
            }
        }
        if ok {
            clique.push(v);
        }
    }
    finish(g, clique, rounds, budget, opts)
}

/// View of one round for a [`Strategy`]: queue queries, and read answers
/// from earlier rounds only.
pub struct RoundContext<'a> {
    g: &'a mut RevealedGraph,
    round: usize,
    ell: usize,
    budget: u64,
    used: u64,
    pending: Vec<(usize, usize)>,
    pending_set: HashSet<(usize, usize)>,
}

impl RoundContext<'_> {
    /// 1-based; `ell + 1` while the output is formed.
    pub fn round(&self) -> usize {
        self.round
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn n(&self) -> usize {
        self.g.n()
    }

    pub fn order_seed(&self) -> u64 {
        self.g.order_seed()
    }

    pub fn budget(&self) -> u64 {
        self.budget
    }

    /// Queries charged so far, including this round's queue.
    pub fn used(&self) -> u64 {
        self.used + self.pending.len() as u64
    }

    /// Queues `uv` for this round.
    pub fn query(&mut self, u: usize, v: usize) -> Result<(), SimError> {
        self.g.check(u, v)?;
        if self.used() + 1 > self.budget {
            return Err(SimError::BudgetExceeded { budget: self.budget });
        }
        self.pending.push((u, v));
        self.pending_set.insert((u.min(v), u.max(v)));
        Ok(())
    }

    /// Answer from an earlier round, `None` if never queried. Reading a pair
    /// queued in the current round is an adaptivity violation.
    pub fn known(&self, u: usize, v: usize) -> Result<Option<bool>, SimError> {
        if self.pending_set.contains(&(u.min(v), u.max(v))) {
            return Err(SimError::AdaptivityViolation {
                u,
                v,
                round: self.round,
            });
        }
        self.g.known(u, v)
    }
}

/// A query algorithm for the round model.
pub trait Strategy {
    /// Queues this round's batch. May read answers of earlier rounds.
    fn plan_round(&mut self, ctx: &mut RoundContext<'_>) -> Result<(), SimError>;
    /// The claimed vertex set once every round has been answered.
    fn output(&mut self, ctx: &mut RoundContext<'_>) -> Result<Vec<usize>, SimError>;
}

/// Runs `strategy` for `ell` rounds under the budget `⌊n^δ⌋`. A round's batch
/// is answered only after the round closes; the output is then verified.
pub fn run_l_adaptive(
    g: &mut RevealedGraph,
    strategy: &mut dyn Strategy,
    delta: f64,
    ell: usize,
    opts: RunOptions,
) -> Result<RunResult, SimError> {
    if !(0.0..=2.0).contains(&delta) {
        return Err(SimError::BadDelta(delta.to_string()));
    }
    if ell == 0 {
        return Err(SimError::NoRounds);
    }
    let budget = budget_for(g.n(), delta);
    let mut used = 0u64;
    for round in 1..=ell {
        let mut ctx = RoundContext {
            g: &mut *g,
            round,
            ell,
            budget,
            used,
            pending: Vec::new(),
            pending_set: HashSet::new(),
        };
        strategy.plan_round(&mut ctx)?;
        let batch = std::mem::take(&mut ctx.pending);
        for (u, v) in batch {
            g.query(u, v)?;
            used += 1;
        }
        g.close_round();
    }
    let mut ctx = RoundContext {
        g: &mut *g,
        round: ell + 1,
        ell,
        budget,
        used,
        pending: Vec::new(),
        pending_set: HashSet::new(),
    };
    let out = strategy.output(&mut ctx)?;
    finish(g, out, ell, budget, opts)
}

/// Greedy in rounds. Each round takes the next `t` vertices of a seeded
/// order, queries them against the current clique and among themselves, and
/// once answered keeps a greedy clique of the survivors. `t` is the largest
/// batch fitting an even share of the remaining budget.
#[derive(Debug, Clone, Default)]
pub struct RoundGreedy {
    reserve_verification: bool,
    order: Vec<usize>,
    next: usize,
    clique: Vec<usize>,
    batch: Vec<usize>,
    reserve: u64,
}

impl RoundGreedy {
    pub fn new(opts: RunOptions) -> Self {
        Self {
            reserve_verification: opts.count_verification,
            ..Self::default()
        }
    }

    fn absorb(&mut self, ctx: &RoundContext<'_>) -> Result<(), SimError> {
        let batch = std::mem::take(&mut self.batch);
        let base = self.clique.len();
        for w in batch {
            let mut ok = true;
            for &u in &self.clique {
                if ctx.known(u, w)? != Some(true) {
                    ok = false;
                    break;
                }
            }
            if ok {
                self.clique.push(w);
            }
        }
        debug_assert!(self.clique.len() >= base);
        Ok(())
    }
}

impl Strategy for RoundGreedy {
    fn plan_round(&mut self, ctx: &mut RoundContext<'_>) -> Result<(), SimError> {
        if ctx.round() == 1 {
            self.order = shuffled(ctx.n(), ctx.order_seed());
            if self.reserve_verification {
                let kmax = 2 * (ctx.n() as f64).log2().ceil() as u64 + 2;
                self.reserve = c2(kmax).min(ctx.budget() / 4);
            }
        }
        self.absorb(ctx)?;
        let rounds_left = (ctx.ell() + 1 - ctx.round()) as u64;
        let spare = ctx.budget().saturating_sub(self.reserve + ctx.used());
        let share = spare / rounds_left;
        let k = self.clique.len() as u64;
        let mut t = 0u64;
        while self.next + (t as usize) < self.order.len() && (t + 1) * k + c2(t + 1) <= share {
            t += 1;
        }
        self.batch = self.order[self.next..self.next + t as usize].to_vec();
        self.next += t as usize;
        for (i, &w) in self.batch.iter().enumerate() {
            for &u in &self.clique {
                ctx.query(u, w)?;
            }
            for &x in &self.batch[..i] {
                ctx.query(x, w)?;
            }
        }
        Ok(())
    }

    fn output(&mut self, ctx: &mut RoundContext<'_>) -> Result<Vec<usize>, SimError> {
        self.absorb(ctx)?;
        Ok(self.clique.clone())
    }
}
