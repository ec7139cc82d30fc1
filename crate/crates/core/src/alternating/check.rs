use std::collections::VecDeque;

use super::{mate, AltError, RedBlueGraph};

const NONE: usize = usize::MAX;

/// Arcs `v -> w` whenever `mate(v)w` is blue: follow the red edge at `v`,
/// then a blue edge. Alternating paths starting with a red edge are walks in
/// this digraph.
fn successor_lists(g: &RedBlueGraph) -> Vec<Vec<usize>> {
    (0..g.n_vertices()).map(|v| g.neighbors(mate(v)).to_vec()).collect()
}

/// Topological order, or `None` if the digraph has a directed cycle.
fn topo_order(succ: &[Vec<usize>]) -> Option<Vec<usize>> {
    let n = succ.len();
    let mut indeg = vec![0usize; n];
    for s in succ {
        for &w in s {
            indeg[w] += 1;
        }
    }
    let mut queue: VecDeque<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(v) = queue.pop_front() {
        order.push(v);
        for &w in &succ[v] {
            indeg[w] -= 1;
            if indeg[w] == 0 {
                queue.push_back(w);
            }
        }
    }
    (order.len() == n).then_some(order)
}

/// Whether some vertex-simple cycle alternates between red and blue edges.
///
/// If the red-then-blue digraph is acyclic there is none. Otherwise, a cycle
/// through blue edge `uv` exists exactly when, after deleting `u` and `v`,
/// the red edges left form a matching with an augmenting path between
/// `mate(u)` and `mate(v)`; this is decided with Edmonds' blossom search.
pub fn has_alternating_cycle(g: &RedBlueGraph) -> bool {
    if topo_order(&successor_lists(g)).is_some() {
        return false;
    }
    let n = g.n_vertices();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut mt = vec![NONE; n];
    for &(u, v) in g.blue_edges() {
        for w in 0..n {
            adj[w].clear();
            mt[w] = if w == u || w == v || mate(w) == u || mate(w) == v {
                NONE
            } else {
                mate(w)
            };
        }
        for &(a, b) in g.blue_edges() {
            if a == u || a == v || b == u || b == v {
                continue;
            }
            adj[a].push(b);
            adj[b].push(a);
        }
        for w in 0..n {
            if mt[w] != NONE {
                adj[w].push(mt[w]);
            }
        }
        if augmenting_path_from(&adj, &mt, mate(u)) {
            return true;
        }
    }
    false
}

/// Edmonds' search for an augmenting path starting at the exposed vertex
/// `root`.
fn augmenting_path_from(adj: &[Vec<usize>], mt: &[usize], root: usize) -> bool {
    let n = adj.len();
    let mut used = vec![false; n];
    let mut parent = vec![NONE; n];
    let mut base: Vec<usize> = (0..n).collect();
    let mut queue = VecDeque::from([root]);
    used[root] = true;
    while let Some(v) = queue.pop_front() {
        for &to in &adj[v] {
            if base[v] == base[to] || mt[v] == to {
                continue;
            }
            if to == root || (mt[to] != NONE && parent[mt[to]] != NONE) {
                let cur = lca(&base, mt, &parent, v, to);
                let mut blossom = vec![false; n];
                mark_path(&base, mt, &mut parent, &mut blossom, v, cur, to);
                mark_path(&base, mt, &mut parent, &mut blossom, to, cur, v);
                for i in 0..n {
                    if blossom[base[i]] {
                        base[i] = cur;
                        if !used[i] {
                            used[i] = true;
                            queue.push_back(i);
                        }
                    }
                }
            } else if parent[to] == NONE {
                parent[to] = v;
                if mt[to] == NONE {
                    return true;
                }
                used[mt[to]] = true;
                queue.push_back(mt[to]);
            }
        }
    }
    false
}

fn lca(base: &[usize], mt: &[usize], parent: &[usize], a: usize, b: usize) -> usize {
    let mut seen = vec![false; base.len()];
    let mut a = a;
    loop {
        a = base[a];
        seen[a] = true;
        if mt[a] == NONE {
            break;
        }
        a = parent[mt[a]];
    }
    let mut b = b;
    loop {
        b = base[b];
        if seen[b] {
            return b;
        }
        b = parent[mt[b]];
    }
}

fn mark_path(
    base: &[usize],
    mt: &[usize],
    parent: &mut [usize],
    blossom: &mut [bool],
    mut v: usize,
    b: usize,
    mut child: usize,
) {
    while base[v] != b {
        blossom[base[v]] = true;
        blossom[base[mt[v]]] = true;
        parent[v] = child;
        child = mt[v];
        v = parent[mt[v]];
    }
}

/// Largest number of blue edges on a vertex-simple alternating path.
///
/// Errors when an alternating cycle exists. The search is an exact
/// branch-and-bound over walks in the red-then-blue digraph that use each red
/// edge at most once; when that digraph is acyclic its longest paths give the
/// bound.
pub fn max_blue_in_alternating_path(g: &RedBlueGraph) -> Result<usize, AltError> {
    if has_alternating_cycle(g) {
        return Err(AltError::CyclePresent);
    }
    if g.blue_count() == 0 {
        return Ok(0);
    }
    let succ = successor_lists(g);
    let n = g.n_vertices();
    // Upper bound on arcs from each vertex.
    let bound: Vec<usize> = match topo_order(&succ) {
        Some(order) => {
            let mut b = vec![0usize; n];
            for &v in order.iter().rev() {
                b[v] = succ[v].iter().map(|&w| b[w] + 1).max().unwrap_or(0);
            }
            b
        }
        None => vec![g.num_red() - 1; n],
    };
    let global = bound.iter().copied().max().unwrap_or(0);
    let mut starts: Vec<usize> = (0..n).collect();
    starts.sort_by_key(|&v| std::cmp::Reverse(bound[v]));
    let mut s = PathSearch {
        succ: &succ,
        bound: &bound,
        used: vec![false; g.num_red()],
        best: 0,
    };
    for v in starts {
        if s.best >= global || bound[v] <= s.best {
            break;
        }
        s.used[v / 2] = true;
        s.run(v, 0, g.num_red() - 1);
        s.used[v / 2] = false;
    }
    Ok(s.best)
}

struct PathSearch<'a> {
    succ: &'a [Vec<usize>],
    bound: &'a [usize],
    used: Vec<bool>,
    best: usize,
}

impl PathSearch<'_> {
    /// At `v` having used `depth` arcs; `free` red edges remain unused.
    fn run(&mut self, v: usize, depth: usize, free: usize) {
        self.best = self.best.max(depth);
        if depth + self.bound[v].min(free) <= self.best {
            return;
        }
        let mut next: Vec<usize> = self.succ[v].iter().copied().filter(|&w| !self.used[w / 2]).collect();
        next.sort_by_key(|&w| std::cmp::Reverse(self.bound[w]));
        for w in next {
            if depth + 1 + self.bound[w].min(free - 1) <= self.best {
                break;
            }
            self.used[w / 2] = true;
            self.run(w, depth + 1, free - 1);
            self.used[w / 2] = false;
        }
    }
}
