use std::ops::{Add, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{EdgeLabeling, LabelError, Matching};
use crate::partition_bounds::epsilon_check;
use crate::Ell;

const FREE: usize = usize::MAX;

/// `Σ_{s=0}^{t−2} 2^{t−2−s} ε^s`: 0 for label 1, 1 for label 2, `2 + ε` for
/// label 3, and so on. Each weight exceeds twice the previous one.
pub fn label_weight(t: u32, epsilon: &BigRational, ell: Ell) -> Result<BigRational, LabelError> {
    if t == 0 || ell.finite().is_some_and(|l| t > l) {
        return Err(LabelError::LabelOutsideRange {
            t,
            ell: ell.finite().unwrap_or(u32::MAX),
        });
    }
    let mut w = BigRational::zero();
    // Horner in the form w <- 2w + eps^s.
    let mut eps_pow = BigRational::one();
    for _ in 0..t.saturating_sub(1) {
        w = w * BigRational::from_integer(2.into()) + &eps_pow;
        eps_pow *= epsilon;
    }
    Ok(w)
}

/// `2^{−ℓ}`.
pub fn default_epsilon(ell: u32) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::one() << ell)
}

/// Weights for labels `0..=top` (index 0 unused) multiplied by `q^{top−2}`
/// where `ε = p/q`, so they are integers.
fn scaled_weights(top: u32, epsilon: &BigRational) -> Vec<BigInt> {
    let p = epsilon.numer();
    let q = epsilon.denom();
    let shift = top.saturating_sub(2) as usize;
    let mut p_pow = vec![BigInt::one()];
    let mut q_pow = vec![BigInt::one()];
    for s in 1..=shift {
        p_pow.push(&p_pow[s - 1] * p);
        q_pow.push(&q_pow[s - 1] * q);
    }
    let mut w = vec![BigInt::zero(); top as usize + 1];
    for (t, slot) in w.iter_mut().enumerate().skip(2) {
        for s in 0..=t - 2 {
            *slot += (BigInt::one() << (t - 2 - s)) * &p_pow[s] * &q_pow[shift - s];
        }
    }
    w
}

/// Result of [`switch_local_search`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalSearchOutcome {
    pub matching: Matching,
    pub epsilon: BigRational,
    /// Total weight of the final matching.
    pub weight: BigRational,
    pub exchanges: usize,
    pub e_switches: usize,
    pub cycle_switches: usize,
}

impl LocalSearchOutcome {
    pub fn moves(&self) -> usize {
        self.exchanges + self.e_switches + self.cycle_switches
    }
}

/// Local search for a matching of `size` edges of small total label weight,
/// starting from a seeded random matching.
///
/// Moves, scanned in this order with first improvement:
/// exchanges (drop one matching edge, add any edge on the freed and uncovered
/// vertices), e-switches, and switches along alternating cycles through three
/// or more matching edges. The cycle search only extends prefixes with
/// positive gain, which loses no improving cycle. The result has no outward
/// critical edge and no pair of critical partner edges across label classes.
pub fn switch_local_search(
    labeling: &EdgeLabeling,
    size: usize,
    epsilon: Option<&BigRational>,
    seed: u64,
) -> Result<LocalSearchOutcome, LabelError> {
    let n = labeling.n_vertices();
    if 2 * size > n {
        return Err(LabelError::SizeTooLarge { size, n });
    }
    let top = labeling.max_label();
    let epsilon = epsilon.cloned().unwrap_or_else(|| default_epsilon(top));
    if top >= 2 && !epsilon_check(top, &epsilon) {
        return Err(LabelError::EpsilonRejected {
            epsilon: epsilon.to_string(),
            ell: top,
        });
    }
    let big = scaled_weights(top, &epsilon);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rng);
    let start: Vec<(usize, usize)> = order[..2 * size].chunks(2).map(|c| (c[0], c[1])).collect();

    // Rank labelings reach thousands of bits; small ones fit in i128.
    let small: Option<Vec<i128>> = if big.iter().all(|w| w.bits() < 120) {
        big.iter().map(|w| w.to_i128()).collect()
    } else {
        None
    };
    let (mate, counts) = match small {
        Some(w) => Search::new(labeling, &w, &start).run(),
        None => Search::new(labeling, &big, &start).run(),
    };
    let mut edges = Vec::with_capacity(size);
    for (u, &m) in mate.iter().enumerate() {
        if m != FREE && u < m {
            edges.push((u, m));
        }
    }
    let matching = Matching::new(n, edges)?;
    let mut weight = BigRational::zero();
    for &(u, v) in matching.edges() {
        weight += label_weight(labeling.label(u, v), &epsilon, labeling.num_labels())?;
    }
    debug_assert!(!weight.is_negative());
    Ok(LocalSearchOutcome {
        matching,
        epsilon,
        weight,
        exchanges: counts[0],
        e_switches: counts[1],
        cycle_switches: counts[2],
    })
}

trait Weight: Clone + Ord + Zero + Add<Output = Self> + Sub<Output = Self> {}
impl<T: Clone + Ord + Zero + Add<Output = T> + Sub<Output = T>> Weight for T {}

struct Search<'a, T> {
    lab: &'a EdgeLabeling,
    w: &'a [T],
    n: usize,
    mate: Vec<usize>,
}

impl<'a, T: Weight> Search<'a, T> {
    fn new(lab: &'a EdgeLabeling, w: &'a [T], start: &[(usize, usize)]) -> Self {
        let n = lab.n_vertices();
        let mut mate = vec![FREE; n];
        for &(u, v) in start {
            mate[u] = v;
            mate[v] = u;
        }
        Self { lab, w, n, mate }
    }

    fn wt(&self, u: usize, v: usize) -> T {
        self.w[self.lab.label(u, v) as usize].clone()
    }

    fn run(mut self) -> (Vec<usize>, [usize; 3]) {
        let mut counts = [0; 3];
        loop {
            if self.exchange() {
                counts[0] += 1;
            } else if self.e_switch() {
                counts[1] += 1;
            } else if self.cycle() {
                counts[2] += 1;
            } else {
                return (self.mate, counts);
            }
        }
    }

    fn set(&mut self, u: usize, v: usize) {
        self.mate[u] = v;
        self.mate[v] = u;
    }

    fn exchange(&mut self) -> bool {
        let free: Vec<usize> = (0..self.n).filter(|&v| self.mate[v] == FREE).collect();
        for a in 0..self.n {
            let b = self.mate[a];
            if b == FREE || b < a {
                continue;
            }
            let old = self.wt(a, b);
            let mut cand = free.clone();
            cand.push(a);
            cand.push(b);
            for (i, &x) in cand.iter().enumerate() {
                for &y in &cand[i + 1..] {
                    if (x == a && y == b) || (x == b && y == a) {
                        continue;
                    }
                    if self.wt(x, y) < old {
                        self.mate[a] = FREE;
                        self.mate[b] = FREE;
                        self.set(x, y);
                        return true;
                    }
                }
            }
        }
        false
    }

    fn e_switch(&mut self) -> bool {
        for a in 0..self.n {
            let b = self.mate[a];
            if b == FREE || b < a {
                continue;
            }
            for c in a + 1..self.n {
                let d = self.mate[c];
                if d == FREE || d < c || c == b {
                    continue;
                }
                let old = self.wt(a, b) + self.wt(c, d);
                for (x, y) in [(c, d), (d, c)] {
                    if self.wt(a, x) + self.wt(b, y) < old {
                        self.set(a, x);
                        self.set(b, y);
                        return true;
                    }
                }
            }
        }
        false
    }

    fn cycle(&mut self) -> bool {
        let mut path = Vec::with_capacity(self.n);
        let mut visited = vec![false; self.n];
        for v0 in 0..self.n {
            let v1 = self.mate[v0];
            if v1 == FREE {
                continue;
            }
            path.clear();
            path.extend([v0, v1]);
            visited[v0] = true;
            visited[v1] = true;
            let g = self.wt(v0, v1);
            let found = self.extend(&mut path, &mut visited, g);
            visited[v0] = false;
            visited[v1] = false;
            if found {
                // path = v0 v1 y1 z1 .. y_k z_k; new edges v1y1, z1y2, .., z_k v0.
                let k = path.len();
                for i in (1..k - 1).step_by(2) {
                    self.set(path[i], path[i + 1]);
                }
                self.set(path[k - 1], path[0]);
                return true;
            }
        }
        false
    }

    /// `path` ends with a matching edge; `g` is the gain so far.
    fn extend(&self, path: &mut Vec<usize>, visited: &mut [bool], g: T) -> bool {
        let cur = *path.last().unwrap();
        if path.len() >= 6 && g.clone() - self.wt(cur, path[0]) > T::zero() {
            return true;
        }
        for y in 0..self.n {
            let z = self.mate[y];
            if visited[y] || z == FREE {
                continue;
            }
            let g1 = g.clone() - self.wt(cur, y);
            if g1 <= T::zero() {
                continue;
            }
            let g2 = g1 + self.wt(y, z);
            path.extend([y, z]);
            visited[y] = true;
            visited[z] = true;
            let found = self.extend(path, visited, g2);
            visited[y] = false;
            visited[z] = false;
            if found {
                return true;
            }
            path.truncate(path.len() - 2);
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::labeled_graphs::{count_critical, cross_class_critical_pairs};
    use rand::Rng;

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn weights_match_closed_forms() {
        let e = q(1, 7);
        let ell = Ell::Finite(4);
        assert_eq!(label_weight(1, &e, ell).unwrap(), q(0, 1));
        assert_eq!(label_weight(2, &e, ell).unwrap(), q(1, 1));
        assert_eq!(label_weight(3, &e, ell).unwrap(), q(2, 1) + &e);
        assert_eq!(label_weight(4, &e, ell).unwrap(), q(4, 1) + q(2, 1) * &e + &e * &e);
        assert!(label_weight(5, &e, ell).is_err());
        assert!(label_weight(0, &e, ell).is_err());
    }

    #[test]
    fn scaled_weights_agree_with_rationals() {
        let e = q(3, 11);
        let top = 6;
        let scale = BigRational::from_integer(BigInt::from(11).pow(top - 2));
        let s = scaled_weights(top, &e);
        for t in 1..=top {
            let exact = label_weight(t, &e, Ell::Finite(top)).unwrap() * &scale;
            assert_eq!(exact, BigRational::from_integer(s[t as usize].clone()));
        }
    }

    #[test]
    fn uniform_labels_give_no_critical_edges() {
        let lab = EdgeLabeling::uniform(9, 1, 1).unwrap();
        let out = switch_local_search(&lab, 3, None, 5).unwrap();
        assert_eq!(out.matching.size(), 3);
        assert_eq!(count_critical(&lab, &out.matching).unwrap().critical_count, 0);
    }

    #[test]
    fn lex_n8_has_no_outward_critical() {
        let lab = EdgeLabeling::lexicographic(8).unwrap();
        for seed in 0..4 {
            let out = switch_local_search(&lab, 4, None, seed).unwrap();
            let r = count_critical(&lab, &out.matching).unwrap();
            assert_eq!(r.outward_count, 0);
            assert!(cross_class_critical_pairs(&lab, &out.matching).unwrap().is_empty());
        }
        // Partial matchings exercise the exchange move.
        let out = switch_local_search(&lab, 2, None, 1).unwrap();
        assert_eq!(count_critical(&lab, &out.matching).unwrap().outward_count, 0);
    }

    #[test]
    fn random_instances_reach_switch_optimum() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for _ in 0..20 {
            let n = rng.gen_range(4..=10);
            let ell = rng.gen_range(1..=4);
            let lab = EdgeLabeling::random(n, ell, &mut rng).unwrap();
            let size = rng.gen_range(1..=n / 2);
            let out = switch_local_search(&lab, size, None, rng.gen()).unwrap();
            assert_eq!(out.matching.size(), size);
            let r = count_critical(&lab, &out.matching).unwrap();
            assert_eq!(r.outward_count, 0);
            assert!(cross_class_critical_pairs(&lab, &out.matching).unwrap().is_empty());
        }
    }

    #[test]
    fn large_epsilon_is_rejected() {
        let lab = EdgeLabeling::uniform(6, 3, 2).unwrap();
        assert!(matches!(
            switch_local_search(&lab, 3, Some(&q(10, 1)), 0),
            Err(LabelError::EpsilonRejected { .. })
        ));
    }
}
