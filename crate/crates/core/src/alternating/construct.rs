use super::{AltError, RedBlueGraph};

/// Red-edge block sizes, lowest block first.
///
/// Even `k`: `k/2` blocks of `⌊2x/k⌋`. Odd `k`: `(k−1)/2` blocks of
/// `⌊2x/k⌋` and a top block of `⌊x/k⌋`. The remainder goes to the first
/// block.
pub fn construction_blocks(k: usize, x: usize) -> Result<Vec<usize>, AltError> {
    if k.is_multiple_of(2) {
        if k < 2 {
            return Err(AltError::KTooSmall { k, min: 2 });
        }
        let b = k / 2;
        if x < b {
            return Err(AltError::XTooSmall { x, k, min: b });
        }
        let mut sizes = vec![x / b; b];
        sizes[0] += x % b;
        Ok(sizes)
    } else {
        if k < 3 {
            return Err(AltError::KTooSmall { k, min: 3 });
        }
        if x < k {
            return Err(AltError::XTooSmall { x, k, min: k });
        }
        let mut sizes = vec![2 * x / k; (k - 1) / 2];
        sizes.push(x / k);
        let used: usize = sizes.iter().sum();
        sizes[0] += x - used;
        Ok(sizes)
    }
}

fn block_of(sizes: &[usize]) -> Vec<usize> {
    sizes
        .iter()
        .enumerate()
        .flat_map(|(i, &s)| std::iter::repeat_n(i, s))
        .collect()
}

/// Blue edges: every pair of left vertices (except, for odd `k`, pairs inside
/// the top block), and right vertex of red edge `i` to left vertex of red
/// edge `j` whenever `i` lies in a higher block than `j`.
fn build(k: usize, x: usize) -> Result<RedBlueGraph, AltError> {
    let sizes = construction_blocks(k, x)?;
    let block = block_of(&sizes);
    let top = sizes.len() - 1;
    let odd = k % 2 == 1;
    let mut blue = Vec::new();
    for i in 0..x {
        for j in i + 1..x {
            if !(odd && block[i] == top && block[j] == top) {
                blue.push((2 * i, 2 * j));
            }
        }
    }
    for i in 0..x {
        for j in 0..x {
            if block[i] > block[j] {
                blue.push((2 * i + 1, 2 * j));
            }
        }
    }
    RedBlueGraph::new(x, blue)
}

pub fn build_even_k(k: usize, x: usize) -> Result<RedBlueGraph, AltError> {
    if k % 2 == 1 {
        return Err(AltError::OddK(k));
    }
    build(k, x)
}

pub fn build_odd_k(k: usize, x: usize) -> Result<RedBlueGraph, AltError> {
    if k.is_multiple_of(2) {
        return Err(AltError::EvenK(k));
    }
    build(k, x)
}

/// `C(x,2) + Σ_{i<j} s_i s_j`, minus `C(s_top, 2)` for odd `k`, from the
/// realised block sizes.
pub fn construction_blue_count(k: usize, x: usize) -> Result<usize, AltError> {
    let sizes = construction_blocks(k, x)?;
    let c2 = |m: usize| m * m.saturating_sub(1) / 2;
    let mut count = c2(x);
    for i in 0..sizes.len() {
        for j in i + 1..sizes.len() {
            count += sizes[i] * sizes[j];
        }
    }
    if k % 2 == 1 {
        count -= c2(*sizes.last().unwrap());
    }
    Ok(count)
}
