use std::fmt::Write as _;

use super::labeling::parse_field;
use super::LabelError;

/// Unordered vertex pair stored with the smaller endpoint first.
pub type Edge = (usize, usize);

#[inline]
pub(crate) fn norm(u: usize, v: usize) -> Edge {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

/// A set of pairwise vertex-disjoint edges of `K_N`.
///
/// Edges are kept normalised (`u < v`) and sorted, so two matchings compare
/// equal iff they have the same edge set and `Ord` is the lexicographic order
/// of the sorted edge lists.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Matching {
    n: usize,
    edges: Vec<Edge>,
}

impl Matching {
    pub fn new(n: usize, edges: impl IntoIterator<Item = Edge>) -> Result<Self, LabelError> {
        let mut covered = vec![false; n];
        let mut out = Vec::new();
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(LabelError::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(LabelError::SelfLoop(u));
            }
            for w in [u, v] {
                if std::mem::replace(&mut covered[w], true) {
                    return Err(LabelError::InvalidMatching(format!("vertex {w} is covered twice")));
                }
            }
            out.push(norm(u, v));
        }
        out.sort_unstable();
        Ok(Self { n, edges: out })
    }

    /// Builds from 1-based pairs, as written in the examples and text files.
    pub fn from_one_based(n: usize, edges: &[(usize, usize)]) -> Result<Self, LabelError> {
        let mut zero = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            if u == 0 || v == 0 {
                return Err(LabelError::InvalidMatching("vertices are 1-based".into()));
            }
            zero.push((u - 1, v - 1));
        }
        Self::new(n, zero)
    }

    pub(crate) fn from_sorted_unchecked(n: usize, edges: Vec<Edge>) -> Self {
        debug_assert!(edges.windows(2).all(|w| w[0] < w[1]));
        Self { n, edges }
    }

    pub fn n_vertices(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn is_perfect(&self) -> bool {
        2 * self.edges.len() == self.n
    }

    pub fn contains(&self, u: usize, v: usize) -> bool {
        self.edges.binary_search(&norm(u, v)).is_ok()
    }

    /// `mates()[v]` is the matching neighbour of `v`, if covered.
    pub fn mates(&self) -> Vec<Option<usize>> {
        let mut mate = vec![None; self.n];
        for &(u, v) in &self.edges {
            mate[u] = Some(v);
            mate[v] = Some(u);
        }
        mate
    }

    /// Edges as 1-based pairs.
    pub fn one_based(&self) -> Vec<(usize, usize)> {
        self.edges.iter().map(|&(u, v)| (u + 1, v + 1)).collect()
    }

    /// One `u v` line per edge, 1-based.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for &(u, v) in &self.edges {
            writeln!(out, "{} {}", u + 1, v + 1).unwrap();
        }
        out
    }

    pub fn from_text(n: usize, text: &str) -> Result<Self, LabelError> {
        let mut edges = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut f = line.split_whitespace();
            let u: usize = parse_field(f.next(), i + 1, "u")?;
            let v: usize = parse_field(f.next(), i + 1, "v")?;
            edges.push((u, v));
        }
        Self::from_one_based(n, &edges)
    }
}

fn check_pair_arg(matching: &Matching, u: usize, v: usize) -> Result<[usize; 2], LabelError> {
    let n = matching.n_vertices();
    for w in [u, v] {
        if w >= n {
            return Err(LabelError::VertexOutOfRange { vertex: w, n });
        }
    }
    if u == v {
        return Err(LabelError::SelfLoop(u));
    }
    if matching.contains(u, v) {
        return Err(LabelError::EdgeInMatching(u, v));
    }
    let mates = matching.mates();
    let mu = mates[u].ok_or(LabelError::EndpointUncovered(u))?;
    let mv = mates[v].ok_or(LabelError::EndpointUncovered(v))?;
    Ok([mu, mv])
}

/// The edge joining the matching neighbours of `u` and `v`.
pub fn m_pair(matching: &Matching, e: Edge) -> Result<Edge, LabelError> {
    let [mu, mv] = check_pair_arg(matching, e.0, e.1)?;
    Ok(norm(mu, mv))
}

/// Replaces the two matching edges covering `e`'s endpoints by `e` and its
/// partner edge.
pub fn e_switch(matching: &Matching, e: Edge) -> Result<Matching, LabelError> {
    let (u, v) = e;
    let [mu, mv] = check_pair_arg(matching, u, v)?;
    let drop = [norm(u, mu), norm(v, mv)];
    let mut edges: Vec<Edge> = matching.edges().iter().copied().filter(|e| !drop.contains(e)).collect();
    edges.push(norm(u, v));
    edges.push(norm(mu, mv));
    edges.sort_unstable();
    Ok(Matching::from_sorted_unchecked(matching.n_vertices(), edges))
}
