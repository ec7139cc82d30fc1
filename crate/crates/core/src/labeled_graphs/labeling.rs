use std::fmt::Write as _;

use rand::Rng;

use super::LabelError;
use crate::Ell;

/// Number of unordered pairs in `K_n`.
pub fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Position of the pair `{u, v}` in the lexicographic order
/// `01, 02, .., 0(n-1), 12, ..`. Requires `u != v`, both `< n`.
#[inline]
pub fn pair_index(n: usize, u: usize, v: usize) -> usize {
    let (a, b) = if u < v { (u, v) } else { (v, u) };
    a * (2 * n - a - 1) / 2 + (b - a - 1)
}

/// A label on every edge of `K_N`.
///
/// With `Ell::Finite(l)` labels lie in `1..=l`. With `Ell::Infinite` the
/// labels are ranks forming a permutation of `1..=C(N,2)`, i.e. a total order
/// on the edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeLabeling {
    n: usize,
    num_labels: Ell,
    labels: Vec<u32>,
}

impl EdgeLabeling {
    /// Builds a labeling from a per-pair function (`u < v`).
    pub fn from_fn(n: usize, num_labels: Ell, mut label: impl FnMut(usize, usize) -> u32) -> Result<Self, LabelError> {
        let mut labels = Vec::with_capacity(pair_count(n));
        for u in 0..n {
            for v in u + 1..n {
                labels.push(label(u, v));
            }
        }
        Self::from_vec(n, num_labels, labels)
    }

    /// Builds a labeling from labels listed in [`pair_index`] order.
    pub fn from_vec(n: usize, num_labels: Ell, labels: Vec<u32>) -> Result<Self, LabelError> {
        if n < 2 {
            return Err(LabelError::TooFewVertices { n, min: 2 });
        }
        if labels.len() != pair_count(n) {
            return Err(LabelError::LabelCount {
                expected: pair_count(n),
                got: labels.len(),
            });
        }
        let max = match num_labels {
            Ell::Finite(l) => l,
            Ell::Infinite => u32::try_from(labels.len()).expect("pair count fits in u32"),
        };
        let mut idx = 0;
        for u in 0..n {
            for v in u + 1..n {
                let label = labels[idx];
                if label == 0 || label > max {
                    return Err(LabelError::LabelOutOfRange { u, v, label, max });
                }
                idx += 1;
            }
        }
        if num_labels.is_infinite() {
            let mut seen = vec![false; labels.len()];
            for &r in &labels {
                let slot = &mut seen[r as usize - 1];
                if *slot {
                    return Err(LabelError::NotAPermutation(labels.len()));
                }
                *slot = true;
            }
        }
        Ok(Self { n, num_labels, labels })
    }

    /// Every edge gets the same label.
    pub fn uniform(n: usize, num_labels: u32, label: u32) -> Result<Self, LabelError> {
        Self::from_vec(n, Ell::Finite(num_labels), vec![label; pair_count(n)])
    }

    /// The lexicographic order `12, 13, .., 1N, 23, ..` as ranks.
    pub fn lexicographic(n: usize) -> Result<Self, LabelError> {
        let m = u32::try_from(pair_count(n)).expect("pair count fits in u32");
        Self::from_vec(n, Ell::Infinite, (1..=m).collect())
    }

    /// Independent uniform labels in `1..=num_labels`.
    pub fn random<R: Rng + ?Sized>(n: usize, num_labels: u32, rng: &mut R) -> Result<Self, LabelError> {
        let labels = (0..pair_count(n)).map(|_| rng.gen_range(1..=num_labels)).collect();
        Self::from_vec(n, Ell::Finite(num_labels), labels)
    }

    pub fn n_vertices(&self) -> usize {
        self.n
    }

    pub fn num_labels(&self) -> Ell {
        self.num_labels
    }

    /// Largest label value that can occur (`C(N,2)` for rank labelings).
    pub fn max_label(&self) -> u32 {
        match self.num_labels {
            Ell::Finite(l) => l,
            Ell::Infinite => self.labels.len() as u32,
        }
    }

    #[inline]
    pub fn label(&self, u: usize, v: usize) -> u32 {
        debug_assert!(u != v && u < self.n && v < self.n);
        self.labels[pair_index(self.n, u, v)]
    }

    /// Labels in [`pair_index`] order.
    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    /// Text form: header `N l` (`l` is `inf` for rank labelings), then one
    /// `u v label` line per pair with 1-based `u < v`.
    pub fn to_text(&self) -> String {
        let mut out = String::with_capacity(12 * self.labels.len());
        writeln!(out, "{} {}", self.n, self.num_labels).unwrap();
        for u in 0..self.n {
            for v in u + 1..self.n {
                writeln!(out, "{} {} {}", u + 1, v + 1, self.label(u, v)).unwrap();
            }
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self, LabelError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (hl, header) = lines.next().ok_or(LabelError::Parse {
            line: 0,
            message: "missing header".into(),
        })?;
        let mut parts = header.split_whitespace();
        let n: usize = parse_field(parts.next(), hl, "N")?;
        let ell: Ell = parts
            .next()
            .ok_or_else(|| parse_err(hl, "missing label count"))?
            .parse()
            .map_err(|e: crate::ParseEllError| parse_err(hl, &e.to_string()))?;
        if n < 2 {
            return Err(LabelError::TooFewVertices { n, min: 2 });
        }
        let mut labels = vec![0u32; pair_count(n)];
        let mut filled = vec![false; labels.len()];
        for (ln, line) in lines {
            let mut f = line.split_whitespace();
            let u: usize = parse_field(f.next(), ln, "u")?;
            let v: usize = parse_field(f.next(), ln, "v")?;
            let label: u32 = parse_field(f.next(), ln, "label")?;
            if u == 0 || v == 0 || u > n || v > n || u >= v {
                return Err(parse_err(ln, "expected 1-based vertices with u < v <= N"));
            }
            let idx = pair_index(n, u - 1, v - 1);
            if filled[idx] {
                return Err(parse_err(ln, "pair listed twice"));
            }
            filled[idx] = true;
            labels[idx] = label;
        }
        if filled.iter().any(|f| !f) {
            return Err(parse_err(0, "not every pair is labeled"));
        }
        Self::from_vec(n, ell, labels)
    }
}

fn parse_err(line: usize, message: &str) -> LabelError {
    LabelError::Parse {
        line,
        message: message.to_string(),
    }
}

pub(crate) fn parse_field<T: std::str::FromStr>(field: Option<&str>, line: usize, name: &str) -> Result<T, LabelError> {
    field
        .ok_or_else(|| parse_err(line, &format!("missing {name}")))?
        .parse()
        .map_err(|_| parse_err(line, &format!("bad {name}")))
}
