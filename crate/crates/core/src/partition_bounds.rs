//! c-vectors, the `γ(ℓ)` upper bounds they imply, the constrained quadratic
//! optimum over label classes, and exact feasibility of the weight parameter.

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed};
use serde::Serialize;

use crate::Ell;

/// Largest `ℓ` whose c-vector fits in `u64`.
pub const MAX_ELL: u32 = 62;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PartitionError {
    #[error("ell = {ell} is below the minimum {min}")]
    EllTooSmall { ell: u32, min: u32 },
    #[error("ell = {0} exceeds the supported maximum {MAX_ELL}")]
    EllTooLarge(u32),
    #[error("class vector is empty")]
    EmptyVector,
    #[error("entry {index} of the class vector is not positive")]
    NonPositiveEntry { index: usize },
    #[error("matching size must be positive")]
    NonPositiveSize,
}

/// Per-label caps `c_ℓ[t]` and their sum `S_ℓ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CVector {
    pub ell: u32,
    pub entries: Vec<u64>,
    pub s_value: u64,
}

pub fn c_vector(ell: u32) -> Result<CVector, PartitionError> {
    if ell < 2 {
        return Err(PartitionError::EllTooSmall { ell, min: 2 });
    }
    if ell > MAX_ELL {
        return Err(PartitionError::EllTooLarge(ell));
    }
    let entries: Vec<u64> = (1..=ell)
        .map(|t| match t {
            1 => 1,
            t if t == ell => 1,
            2 => 1 << (ell - 2),
            t => (1 << (ell - t + 1)) - 2,
        })
        .collect();
    let s_value = entries.iter().sum();
    Ok(CVector { ell, entries, s_value })
}

/// `S_ℓ = 3·2^{ℓ−2} − 2ℓ + 4` for `ℓ ≥ 3`, and `S_2 = 2`.
pub fn s_closed_form(ell: u32) -> Result<u64, PartitionError> {
    match ell {
        0 | 1 => Err(PartitionError::EllTooSmall { ell, min: 2 }),
        2 => Ok(2),
        l if l > MAX_ELL => Err(PartitionError::EllTooLarge(l)),
        l => Ok(3 * (1u64 << (l - 2)) + 4 - 2 * u64::from(l)),
    }
}

/// The unproven four-label vector `(1, 3, 2, 1)`.
pub fn conjectured_c4() -> CVector {
    CVector {
        ell: 4,
        entries: vec![1, 3, 2, 1],
        s_value: 7,
    }
}

/// `1/2 − 1/(2S)`.
pub fn gamma_from_s(s: u64) -> Ratio<u64> {
    Ratio::new(s - 1, 2 * s)
}

/// Upper bound on `γ(ℓ)`: `1/2 − 1/(2S_ℓ)` for finite `ℓ`, `1/2` otherwise.
pub fn gamma_upper_bound(ell: Ell) -> Result<Ratio<u64>, PartitionError> {
    match ell {
        Ell::Infinite => Ok(Ratio::new(1, 2)),
        Ell::Finite(l) => Ok(gamma_from_s(c_vector(l)?.s_value)),
    }
}

/// Maximiser of `Σ_{i<j} 2x_i x_j + Σ_t (1 − 1/k_t) x_t²` subject to
/// `Σ x_t = M`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OptimalPartition {
    pub sizes: Vec<BigRational>,
    /// `M²(1 − 1/S)`.
    pub value: BigRational,
    /// `value − (1/2 − 1/(2S))·C(2M, 2) = (1 − 1/S)·M/2`, kept apart from
    /// the value.
    pub linear_remainder: BigRational,
}

pub fn optimal_partition(k_vec: &[BigRational], m: &BigRational) -> Result<OptimalPartition, PartitionError> {
    if k_vec.is_empty() {
        return Err(PartitionError::EmptyVector);
    }
    if let Some(index) = k_vec.iter().position(|k| !k.is_positive()) {
        return Err(PartitionError::NonPositiveEntry { index });
    }
    if !m.is_positive() {
        return Err(PartitionError::NonPositiveSize);
    }
    let s: BigRational = k_vec.iter().sum();
    let sizes = k_vec.iter().map(|k| m * k / &s).collect();
    let factor = BigRational::one() - s.recip();
    let value = m * m * &factor;
    let linear_remainder = factor * m / BigRational::from_integer(BigInt::from(2));
    Ok(OptimalPartition {
        sizes,
        value,
        linear_remainder,
    })
}

/// Exact check of the strict inequalities the weight scheme needs for `ℓ`
/// labels:
///
/// (a) `Σ_{s=0}^{ℓ−2} 2^{ℓ−2−s} ε^s < 2^{ℓ−2} + 1`;
///
/// (b) for `3 ≤ t ≤ ℓ−1`,
/// `Σ_{s=0}^{t−2} a_s ε^s > Σ_{s=0}^{t−3} a_s ε^s + Σ_{s=t−2}^{ℓ−2} 2^{ℓ−2−s} ε^s`
/// with `a_s = 2^{ℓ−1−s} − 2^{t−2−s}`.
///
/// Both sides are scaled by `q^{ℓ−2}` (`ε = p/q`) so only integers are
/// compared. Non-positive `ε` and `ℓ < 2` fail.
pub fn epsilon_check(ell: u32, epsilon: &BigRational) -> bool {
    if ell < 2 || !epsilon.is_positive() {
        return false;
    }
    let top = (ell - 2) as usize;
    let (p, q) = (epsilon.numer(), epsilon.denom());
    // term[s] = ε^s · q^{ℓ−2}
    let mut p_pow = vec![BigInt::one()];
    let mut q_pow = vec![BigInt::one()];
    for s in 1..=top {
        p_pow.push(&p_pow[s - 1] * p);
        q_pow.push(&q_pow[s - 1] * q);
    }
    let term: Vec<BigInt> = (0..=top).map(|s| &p_pow[s] * &q_pow[top - s]).collect();
    let pow2 = |e: usize| BigInt::one() << e;

    let lhs_a: BigInt = (0..=top).map(|s| pow2(top - s) * &term[s]).sum();
    let rhs_a = (pow2(top) + 1) * &q_pow[top];
    if lhs_a >= rhs_a {
        return false;
    }
    let l = ell as usize;
    for t in 3..l {
        let a = |s: usize| (pow2(l - 1 - s) - pow2(t - 2 - s)) * &term[s];
        let red: BigInt = (0..=t - 2).map(a).sum();
        let blue: BigInt =
            (0..t - 2).map(a).sum::<BigInt>() + (t - 2..=top).map(|s| pow2(top - s) * &term[s]).sum::<BigInt>();
        if red <= blue {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn small_c_vectors() {
        let e = |l| c_vector(l).unwrap().entries;
        assert_eq!(e(2), vec![1, 1]);
        assert_eq!(e(3), vec![1, 2, 1]);
        assert_eq!(e(4), vec![1, 4, 2, 1]);
        assert_eq!(e(5), vec![1, 8, 6, 2, 1]);
        assert_eq!(e(6), vec![1, 16, 14, 6, 2, 1]);
        assert_eq!(c_vector(6).unwrap().s_value, 40);
        assert_eq!(c_vector(4).unwrap().s_value, 8);
        assert!(c_vector(1).is_err());
        assert!(c_vector(63).is_err());
    }

    #[test]
    fn s_closed_form_matches_sum() {
        for l in 2..=MAX_ELL {
            assert_eq!(s_closed_form(l).unwrap(), c_vector(l).unwrap().s_value, "ell {l}");
        }
    }

    #[test]
    fn gamma_values() {
        let g = |l| gamma_upper_bound(l).unwrap();
        assert_eq!(g(Ell::Finite(2)), Ratio::new(1, 4));
        assert_eq!(g(Ell::Finite(3)), Ratio::new(3, 8));
        assert_eq!(g(Ell::Finite(4)), Ratio::new(7, 16));
        assert_eq!(g(Ell::Infinite), Ratio::new(1, 2));
        assert_eq!(gamma_from_s(conjectured_c4().s_value), Ratio::new(3, 7));
    }

    #[test]
    fn partition_examples() {
        let ks = |v: &[i64]| v.iter().map(|&k| q(k, 1)).collect::<Vec<_>>();
        let p = optimal_partition(&ks(&[1, 1]), &q(10, 1)).unwrap();
        assert_eq!(p.sizes, ks(&[5, 5]));
        assert_eq!(p.value, q(50, 1));
        let p = optimal_partition(&ks(&[1, 4, 2, 1]), &q(8, 1)).unwrap();
        assert_eq!(p.sizes, ks(&[1, 4, 2, 1]));
        assert_eq!(p.value, q(56, 1));
        // value - gamma * C(2M,2) is the linear remainder
        let c2m = q(16 * 15 / 2, 1);
        let g = q(7, 16);
        assert_eq!(&p.value - g * c2m, p.linear_remainder);
        let p = optimal_partition(&ks(&[1]), &q(5, 1)).unwrap();
        assert_eq!(p.value, q(0, 1));
        assert!(optimal_partition(&ks(&[1, 0]), &q(5, 1)).is_err());
        assert!(optimal_partition(&[], &q(5, 1)).is_err());
    }

    #[test]
    fn epsilon_examples() {
        assert!(epsilon_check(3, &q(1, 8)));
        assert!(epsilon_check(2, &q(1, 2)));
        assert!(epsilon_check(2, &q(99, 100)));
        for l in 3..=10 {
            assert!(!epsilon_check(l, &q(10, 1)));
        }
        for l in 2..=10 {
            assert!(epsilon_check(l, &BigRational::new(1.into(), BigInt::one() << l)));
        }
        assert!(!epsilon_check(4, &q(0, 1)));
        assert!(!epsilon_check(4, &q(-1, 8)));
    }
}
