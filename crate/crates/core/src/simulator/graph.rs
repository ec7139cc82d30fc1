use std::collections::HashMap;

use serde::Serialize;

use super::SimError;

const GOLDEN: u64 = 0x9e37_79b9_7f4a_7c15;

fn mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Edge coin of the pair `{a, b}` (global ids) in the graph keyed by `seed`.
pub(crate) fn coin(seed: u64, a: u64, b: u64) -> bool {
    let (lo, hi) = (a.min(b), a.max(b));
    let key = mix(seed.wrapping_add(GOLDEN)) ^ mix(lo.wrapping_mul(GOLDEN) ^ hi.rotate_left(32));
    mix(key) >> 63 == 1
}

/// `⌊n^δ⌋`.
pub fn budget_for(n: usize, delta: f64) -> u64 {
    let b = (n as f64).powf(delta);
    // Guard against 4095.9999 for exact powers.
    let r = b.round();
    if (b - r).abs() < 1e-9 * r.max(1.0) {
        r as u64
    } else {
        b.floor() as u64
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct QueryRecord {
    pub round: usize,
    pub u: usize,
    pub v: usize,
    pub bit: bool,
}

/// Adjacency oracle for `G(n, 1/2)`: every pair's coin is drawn on first
/// query from a keyed hash and cached.
#[derive(Debug, Clone)]
pub struct RevealedGraph {
    n: usize,
    seed: u64,
    /// Global id of local vertex 0; blocks of a larger graph share its coins.
    offset: usize,
    order_seed: u64,
    revealed: HashMap<(usize, usize), bool>,
    log: Vec<QueryRecord>,
    round: usize,
}

pub fn new_instance(n: usize, seed: u64) -> Result<RevealedGraph, SimError> {
    RevealedGraph::new(n, seed)
}

impl RevealedGraph {
    pub fn new(n: usize, seed: u64) -> Result<Self, SimError> {
        Self::block(n, seed, 0, seed)
    }

    /// Vertices `offset..offset + n` of the graph keyed by `seed`, with its
    /// own seed for strategy randomness.
    pub fn block(n: usize, seed: u64, offset: usize, order_seed: u64) -> Result<Self, SimError> {
        if n < 2 {
            return Err(SimError::TooFewVertices(n));
        }
        Ok(Self {
            n,
            seed,
            offset,
            order_seed,
            revealed: HashMap::new(),
            log: Vec::new(),
            round: 1,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn offset(&self) -> usize {
        self.offset
    }

    pub fn order_seed(&self) -> u64 {
        self.order_seed
    }

    /// Current 1-based round.
    pub fn round(&self) -> usize {
        self.round
    }

    pub fn close_round(&mut self) {
        self.round += 1;
    }

    pub(crate) fn check(&self, u: usize, v: usize) -> Result<(), SimError> {
        for w in [u, v] {
            if w >= self.n {
                return Err(SimError::VertexOutOfRange { vertex: w, n: self.n });
            }
        }
        if u == v {
            return Err(SimError::SelfLoop(u));
        }
        Ok(())
    }

    /// Asks whether `uv` is an edge. Logged every time; the coin is drawn once.
    pub fn query(&mut self, u: usize, v: usize) -> Result<bool, SimError> {
        self.check(u, v)?;
        let key = (u.min(v), u.max(v));
        let (seed, off) = (self.seed, self.offset as u64);
        let bit = *self
            .revealed
            .entry(key)
            .or_insert_with(|| coin(seed, off + key.0 as u64, off + key.1 as u64));
        self.log.push(QueryRecord {
            round: self.round,
            u,
            v,
            bit,
        });
        Ok(bit)
    }

    /// Answer to an earlier query, without querying.
    pub fn known(&self, u: usize, v: usize) -> Result<Option<bool>, SimError> {
        self.check(u, v)?;
        Ok(self.revealed.get(&(u.min(v), u.max(v))).copied())
    }

    pub fn revealed_count(&self) -> usize {
        self.revealed.len()
    }

    pub fn query_log(&self) -> &[QueryRecord] {
        &self.log
    }

    /// One `round,u,v,bit` line per query.
    pub fn transcript(&self) -> String {
        let mut s = String::new();
        for q in &self.log {
            s.push_str(&format!("{},{},{},{}\n", q.round, q.u, q.v, u8::from(q.bit)));
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    #[test]
    fn caching_and_logging() {
        let mut g = new_instance(10, 42).unwrap();
        let a = g.query(3, 7).unwrap();
        let b = g.query(7, 3).unwrap();
        assert_eq!(a, b);
        assert_eq!(g.query_log().len(), 2);
        assert_eq!(g.revealed_count(), 1);
        assert_eq!(g.query(4, 4).unwrap_err(), SimError::SelfLoop(4));
        assert!(g.query(0, 10).is_err());
        assert!(new_instance(1, 0).is_err());
        assert_eq!(g.transcript().lines().count(), 2);
    }

    #[test]
    fn deterministic_per_seed() {
        let mut g1 = new_instance(100, 9).unwrap();
        let mut g2 = new_instance(100, 9).unwrap();
        let mut g3 = new_instance(100, 10).unwrap();
        let mut differ = 0;
        for u in 0..50 {
            let v = 99 - u;
            assert_eq!(g1.query(u, v).unwrap(), g2.query(u, v).unwrap());
            differ += usize::from(g1.query(u, v).unwrap() != g3.query(u, v).unwrap());
        }
        assert!(differ > 5);
    }

    #[test]
    fn blocks_share_coins() {
        let mut whole = new_instance(20, 5).unwrap();
        let mut part = RevealedGraph::block(10, 5, 10, 77).unwrap();
        for u in 0..10 {
            for v in u + 1..10 {
                assert_eq!(part.query(u, v).unwrap(), whole.query(u + 10, v + 10).unwrap());
            }
        }
    }

    #[test]
    fn edge_density_is_half() {
        let n = 10_000;
        let mut g = new_instance(n, 2024).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        let mut ones = 0;
        let trials = 100_000;
        let mut done = 0;
        while done < trials {
            let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
            if u == v {
                continue;
            }
            ones += usize::from(g.query(u, v).unwrap());
            done += 1;
        }
        let d = ones as f64 / trials as f64;
        assert!((d - 0.5).abs() < 0.01, "{d}");
    }

    #[test]
    fn budget_rounding() {
        assert_eq!(budget_for(4096, 1.0), 4096);
        assert_eq!(budget_for(4096, 1.5), 262_144);
        assert_eq!(budget_for(10, 1.5), 31);
        assert_eq!(budget_for(1 << 14, 2.0), 1 << 28);
    }
}
