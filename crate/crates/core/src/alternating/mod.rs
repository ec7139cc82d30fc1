//! Red/blue graphs: a perfect red matching on `2x` vertices plus blue edges,
//! alternating cycle and path checks, the extremal constructions, and an
//! exhaustive oracle for the largest feasible blue edge count.
//!
//! Red edge `i` joins vertices `2i` and `2i + 1`; `2i` is its left vertex.
//! The text format is 1-based, so red edge `i` joins `2i − 1` and `2i` there.

mod brute;
mod check;
mod construct;

pub use brute::{beta_bruteforce, DEFAULT_BETA_PAIR_CAP};
pub use check::{has_alternating_cycle, max_blue_in_alternating_path};
pub use construct::{build_even_k, build_odd_k, construction_blocks, construction_blue_count};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AltError {
    #[error("k = {0} must be even")]
    OddK(usize),
    #[error("k = {0} must be odd")]
    EvenK(usize),
    #[error("k = {k} is below the minimum {min}")]
    KTooSmall { k: usize, min: usize },
    #[error("x = {x} is below the minimum {min} for k = {k}")]
    XTooSmall { x: usize, k: usize, min: usize },
    #[error("vertex {vertex} outside the {n}-vertex carrier")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("blue self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("blue edge ({0}, {1}) duplicates a red edge")]
    DuplicatesRed(usize, usize),
    #[error("graph has an alternating cycle; the longest alternating path is undefined")]
    CyclePresent,
    #[error("instance too large: {pairs} candidate blue pairs exceed the cap {cap}")]
    InstanceTooLarge { pairs: usize, cap: usize },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Edge = (usize, usize);

/// Perfect red matching on `2x` vertices and a set of blue edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RedBlueGraph {
    num_red: usize,
    /// Sorted, normalised, no duplicates.
    blue: Vec<Edge>,
    adj: Vec<Vec<usize>>,
}

#[inline]
pub fn mate(v: usize) -> usize {
    v ^ 1
}

impl RedBlueGraph {
    pub fn new(num_red: usize, blue: impl IntoIterator<Item = Edge>) -> Result<Self, AltError> {
        let n = 2 * num_red;
        let mut edges = Vec::new();
        for (u, v) in blue {
            for w in [u, v] {
                if w >= n {
                    return Err(AltError::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(AltError::SelfLoop(u));
            }
            if mate(u) == v {
                return Err(AltError::DuplicatesRed(u, v));
            }
            edges.push((u.min(v), u.max(v)));
        }
        edges.sort_unstable();
        edges.dedup();
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        Ok(Self {
            num_red,
            blue: edges,
            adj,
        })
    }

    pub fn from_one_based(num_red: usize, blue: &[Edge]) -> Result<Self, AltError> {
        let n = 2 * num_red;
        let mut out = Vec::with_capacity(blue.len());
        for &(u, v) in blue {
            for w in [u, v] {
                if w == 0 || w > n {
                    return Err(AltError::VertexOutOfRange { vertex: w, n });
                }
            }
            out.push((u - 1, v - 1));
        }
        Self::new(num_red, out)
    }

    pub fn num_red(&self) -> usize {
        self.num_red
    }

    pub fn n_vertices(&self) -> usize {
        2 * self.num_red
    }

    pub fn blue_edges(&self) -> &[Edge] {
        &self.blue
    }

    pub fn blue_count(&self) -> usize {
        self.blue.len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn has_blue(&self, u: usize, v: usize) -> bool {
        self.blue.binary_search(&(u.min(v), u.max(v))).is_ok()
    }

    /// `x` on the first line, then one `u v` line per blue edge (1-based).
    pub fn to_text(&self) -> String {
        let mut s = format!("{}\n", self.num_red);
        for &(u, v) in &self.blue {
            s.push_str(&format!("{} {}\n", u + 1, v + 1));
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self, AltError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let parse = |line: usize, tok: Option<&str>| -> Result<usize, AltError> {
            let tok = tok.ok_or_else(|| AltError::Parse {
                line,
                message: "missing field".into(),
            })?;
            tok.parse().map_err(|_| AltError::Parse {
                line,
                message: format!("bad integer `{tok}`"),
            })
        };
        let (line, header) = lines.next().ok_or(AltError::Parse {
            line: 1,
            message: "empty input".into(),
        })?;
        let mut it = header.split_whitespace();
        let x = parse(line, it.next())?;
        if it.next().is_some() {
            return Err(AltError::Parse {
                line,
                message: "header must hold only x".into(),
            });
        }
        let mut blue = Vec::new();
        for (line, l) in lines {
            let mut it = l.split_whitespace();
            let u = parse(line, it.next())?;
            let v = parse(line, it.next())?;
            if it.next().is_some() {
                return Err(AltError::Parse {
                    line,
                    message: "expected `u v`".into(),
                });
            }
            blue.push((u, v));
        }
        Self::from_one_based(x, &blue)
    }
}
