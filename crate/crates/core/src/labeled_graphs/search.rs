use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;

use super::{count_critical, CriticalReport, Edge, EdgeLabeling, LabelError, Matching};
use crate::Ell;

const FREE: usize = usize::MAX;

fn check_instance(labeling: &EdgeLabeling, size: usize, cap: usize) -> Result<(), LabelError> {
    let n = labeling.n_vertices();
    if n > cap {
        return Err(LabelError::InstanceTooLarge { n, cap });
    }
    if 2 * size > n {
        return Err(LabelError::SizeTooLarge { size, n });
    }
    Ok(())
}

/// Candidate first edges in lexicographic order. A first edge `(a, b)` leaves
/// every vertex below `a` uncovered, so perfect matchings only start at 0.
fn first_edges(n: usize, size: usize) -> Vec<Edge> {
    let perfect = 2 * size == n;
    let mut out = Vec::new();
    for a in 0..n {
        if perfect && a > 0 {
            break;
        }
        if n - a < 2 * size {
            break;
        }
        for b in a + 1..n {
            out.push((a, b));
        }
    }
    out
}

/// Branch-and-bound over matchings of one size, in lexicographic order of the
/// sorted edge list. Critical pairs are charged as soon as both endpoints are
/// covered; outward critical edges are charged at the leaves.
struct MinCritical<'a> {
    lab: &'a EdgeLabeling,
    n: usize,
    perfect: bool,
    mate: Vec<usize>,
    cover: Vec<u32>,
    covered: Vec<usize>,
    edges: Vec<Edge>,
    global: &'a AtomicU64,
    best: u64,
    best_edges: Option<Vec<Edge>>,
}

impl<'a> MinCritical<'a> {
    fn new(lab: &'a EdgeLabeling, size: usize, global: &'a AtomicU64) -> Self {
        let n = lab.n_vertices();
        Self {
            lab,
            n,
            perfect: 2 * size == n,
            mate: vec![FREE; n],
            cover: vec![0; n],
            covered: Vec::with_capacity(2 * size),
            edges: Vec::with_capacity(size),
            global,
            best: u64::MAX,
            best_edges: None,
        }
    }

    fn push(&mut self, a: usize, b: usize) -> u64 {
        let l = self.lab.label(a, b);
        let mut delta = 0;
        for &w in &self.covered {
            let top = l.max(self.cover[w]);
            delta += u64::from(self.lab.label(a, w) < top) + u64::from(self.lab.label(b, w) < top);
        }
        self.mate[a] = b;
        self.mate[b] = a;
        self.cover[a] = l;
        self.cover[b] = l;
        self.covered.push(a);
        self.covered.push(b);
        self.edges.push((a, b));
        delta
    }

    fn pop(&mut self) {
        let (a, b) = self.edges.pop().unwrap();
        self.covered.truncate(self.covered.len() - 2);
        self.mate[a] = FREE;
        self.mate[b] = FREE;
    }

    fn outward(&self) -> u64 {
        if self.perfect {
            return 0;
        }
        let mut c = 0;
        for &u in &self.covered {
            for z in 0..self.n {
                if self.mate[z] == FREE && self.lab.label(u, z) < self.cover[u] {
                    c += 1;
                }
            }
        }
        c
    }

    fn pruned(&self, partial: u64) -> bool {
        partial >= self.best || partial > self.global.load(Ordering::Relaxed)
    }

    fn run(&mut self, pos: usize, remaining: usize, partial: u64) {
        if self.pruned(partial) {
            return;
        }
        if remaining == 0 {
            let total = partial + self.outward();
            if total < self.best {
                self.best = total;
                self.best_edges = Some(self.edges.clone());
                self.global.fetch_min(total, Ordering::Relaxed);
            }
            return;
        }
        let Some(a) = (pos..self.n).find(|&v| self.mate[v] == FREE) else {
            return;
        };
        let free_left = (a..self.n).filter(|&v| self.mate[v] == FREE).count();
        if free_left < 2 * remaining {
            return;
        }
        for b in a + 1..self.n {
            if self.mate[b] != FREE {
                continue;
            }
            let d = self.push(a, b);
            self.run(a + 1, remaining - 1, partial + d);
            self.pop();
        }
        if !self.perfect && free_left > 2 * remaining {
            self.run(a + 1, remaining, partial);
        }
    }
}

/// Exact minimum of the critical-edge count over all matchings of `size`
/// edges, by exhaustive enumeration. Ties go to the lexicographically smallest
/// sorted edge list, independent of thread scheduling.
pub fn min_critical_matching_bruteforce(
    labeling: &EdgeLabeling,
    size: usize,
    cap: usize,
) -> Result<(Matching, CriticalReport), LabelError> {
    check_instance(labeling, size, cap)?;
    let n = labeling.n_vertices();
    if size == 0 {
        let m = Matching::new(n, [])?;
        let r = count_critical(labeling, &m)?;
        return Ok((m, r));
    }
    let global = AtomicU64::new(u64::MAX);
    let branches = first_edges(n, size);
    let results: Vec<Option<(u64, Vec<Edge>)>> = branches
        .par_iter()
        .map(|&(a, b)| {
            let mut s = MinCritical::new(labeling, size, &global);
            let d = s.push(a, b);
            s.run(a + 1, size - 1, d);
            s.best_edges.map(|e| (s.best, e))
        })
        .collect();
    // Branches are in lexicographic order, so the first minimum wins ties.
    let (_, edges) = results
        .into_iter()
        .flatten()
        .min_by_key(|(c, _)| *c)
        .expect("at least one matching of the requested size exists");
    let mut edges = edges;
    edges.sort_unstable();
    let m = Matching::from_sorted_unchecked(n, edges);
    let r = count_critical(labeling, &m)?;
    Ok((m, r))
}

/// The matching of `size` edges that is smallest in the anti-lexicographic
/// order: edge ranks compared from the largest downwards. Requires a rank
/// labeling; exhaustive.
pub fn anti_lex_min_matching(labeling: &EdgeLabeling, size: usize, cap: usize) -> Result<Matching, LabelError> {
    if labeling.num_labels() != Ell::Infinite {
        return Err(LabelError::NotUnbounded(labeling.num_labels()));
    }
    check_instance(labeling, size, cap)?;
    let n = labeling.n_vertices();
    let mut s = AntiLex {
        lab: labeling,
        n,
        perfect: 2 * size == n,
        mate: vec![false; n],
        edges: Vec::with_capacity(size),
        ranks: Vec::with_capacity(size),
        best: None,
    };
    s.run(0, size);
    let (_, mut edges) = s.best.expect("a matching of the requested size exists");
    edges.sort_unstable();
    Ok(Matching::from_sorted_unchecked(n, edges))
}

struct AntiLex<'a> {
    lab: &'a EdgeLabeling,
    n: usize,
    perfect: bool,
    mate: Vec<bool>,
    edges: Vec<Edge>,
    /// Ranks of `edges`, sorted descending.
    ranks: Vec<u32>,
    best: Option<(Vec<u32>, Vec<Edge>)>,
}

impl AntiLex<'_> {
    /// Every superset of the current edges has a descending rank vector that
    /// dominates the current one entrywise, so a strictly worse prefix can be
    /// cut.
    fn dominated(&self) -> bool {
        match &self.best {
            Some((b, _)) => self.ranks.as_slice() > &b[..self.ranks.len()],
            None => false,
        }
    }

    fn run(&mut self, pos: usize, remaining: usize) {
        if self.dominated() {
            return;
        }
        if remaining == 0 {
            if self.best.as_ref().is_none_or(|(b, _)| self.ranks < *b) {
                self.best = Some((self.ranks.clone(), self.edges.clone()));
            }
            return;
        }
        let Some(a) = (pos..self.n).find(|&v| !self.mate[v]) else {
            return;
        };
        let free_left = (a..self.n).filter(|&v| !self.mate[v]).count();
        if free_left < 2 * remaining {
            return;
        }
        for b in a + 1..self.n {
            if self.mate[b] {
                continue;
            }
            let r = self.lab.label(a, b);
            let at = self.ranks.partition_point(|&x| x > r);
            self.ranks.insert(at, r);
            self.edges.push((a, b));
            self.mate[a] = true;
            self.mate[b] = true;
            self.run(a + 1, remaining - 1);
            self.mate[a] = false;
            self.mate[b] = false;
            self.edges.pop();
            self.ranks.remove(at);
        }
        if !self.perfect && free_left > 2 * remaining {
            self.run(a + 1, remaining);
        }
    }
}
