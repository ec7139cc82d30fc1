use num_rational::Ratio;
use serde::Serialize;

use super::{EdgeLabeling, LabelError};
use crate::Ell;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ConstructionKind {
    LexInfinite,
    TwoLabel,
    ThreeLabel,
    FourLabel,
}

impl ConstructionKind {
    /// Block ratios as `(numerator, denominator)`.
    fn ratios(self) -> &'static [(usize, usize)] {
        match self {
            ConstructionKind::LexInfinite => &[(1, 1)],
            ConstructionKind::TwoLabel => &[(1, 4), (3, 4)],
            ConstructionKind::ThreeLabel => &[(1, 8), (1, 4), (5, 8)],
            ConstructionKind::FourLabel => &[(1, 12), (2, 12), (2, 12), (7, 12)],
        }
    }

    /// Command-line name.
    pub fn name(self) -> &'static str {
        match self {
            ConstructionKind::LexInfinite => "lex",
            ConstructionKind::TwoLabel => "two",
            ConstructionKind::ThreeLabel => "three",
            ConstructionKind::FourLabel => "four",
        }
    }

    /// Smallest `N` for which every block is non-empty.
    pub fn min_vertices(self) -> usize {
        match self {
            ConstructionKind::LexInfinite => 2,
            ConstructionKind::TwoLabel => 4,
            ConstructionKind::ThreeLabel => 8,
            ConstructionKind::FourLabel => 12,
        }
    }

    pub fn num_labels(self) -> Ell {
        match self {
            ConstructionKind::LexInfinite => Ell::Infinite,
            ConstructionKind::TwoLabel => Ell::Finite(2),
            ConstructionKind::ThreeLabel => Ell::Finite(3),
            ConstructionKind::FourLabel => Ell::Finite(4),
        }
    }

    /// Limit of the minimum critical-edge ratio over perfect matchings as
    /// `N` grows.
    pub fn asymptotic_min_ratio(self) -> Ratio<u64> {
        match self {
            ConstructionKind::TwoLabel => Ratio::new(1, 4),
            ConstructionKind::ThreeLabel => Ratio::new(3, 8),
            ConstructionKind::FourLabel => Ratio::new(5, 12),
            ConstructionKind::LexInfinite => Ratio::new(1, 2),
        }
    }

    /// Label of an edge between blocks `i` and `j` (0-based, `i <= j`).
    fn block_label(self, i: usize, j: usize) -> u32 {
        match self {
            ConstructionKind::LexInfinite => unreachable!("rank labeling has no block rule"),
            ConstructionKind::TwoLabel => match (i, j) {
                (1, 1) => 2,
                _ => 1,
            },
            ConstructionKind::ThreeLabel => match (i, j) {
                (2, 2) => 3,
                (i, 2) => i as u32 + 1,
                _ => 1,
            },
            ConstructionKind::FourLabel => match (i, j) {
                (1, 3) => 2,
                (0 | 1, _) => 1,
                (2, 2) => 2,
                (2, 3) => 3,
                (3, 3) => 4,
                _ => unreachable!(),
            },
        }
    }
}

impl std::str::FromStr for ConstructionKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "lex" | "lex-infinite" => Ok(ConstructionKind::LexInfinite),
            "two" => Ok(ConstructionKind::TwoLabel),
            "three" => Ok(ConstructionKind::ThreeLabel),
            "four" => Ok(ConstructionKind::FourLabel),
            _ => Err(format!("unknown construction `{s}` (expected two, three, four or lex)")),
        }
    }
}

/// A block-structured labeling of `K_N`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Construction {
    pub kind: ConstructionKind,
    pub n_vertices: usize,
    /// Sizes of consecutive vertex blocks. Each is the floor of its ratio
    /// times `N`; the remainder goes to the last (largest) block.
    pub part_sizes: Vec<usize>,
}

impl Construction {
    pub fn new(kind: ConstructionKind, n: usize) -> Result<Self, LabelError> {
        let min = kind.min_vertices();
        if n < min {
            return Err(LabelError::TooFewVertices { n, min });
        }
        let mut part_sizes: Vec<usize> = kind.ratios().iter().map(|&(a, b)| a * n / b).collect();
        let used: usize = part_sizes.iter().sum();
        *part_sizes.last_mut().unwrap() += n - used;
        Ok(Self {
            kind,
            n_vertices: n,
            part_sizes,
        })
    }

    /// Block index of every vertex.
    pub fn blocks(&self) -> Vec<usize> {
        self.part_sizes
            .iter()
            .enumerate()
            .flat_map(|(i, &s)| std::iter::repeat_n(i, s))
            .collect()
    }

    pub fn labeling(&self) -> EdgeLabeling {
        let n = self.n_vertices;
        if self.kind == ConstructionKind::LexInfinite {
            return EdgeLabeling::lexicographic(n).expect("n >= 2");
        }
        let block = self.blocks();
        EdgeLabeling::from_fn(n, self.kind.num_labels(), |u, v| {
            let (i, j) = (block[u].min(block[v]), block[u].max(block[v]));
            self.kind.block_label(i, j)
        })
        .expect("block labels are in range")
    }
}

pub fn make_construction(kind: ConstructionKind, n: usize) -> Result<EdgeLabeling, LabelError> {
    Ok(Construction::new(kind, n)?.labeling())
}
