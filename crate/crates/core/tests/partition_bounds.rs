use cqlab_core::partition_bounds::{
    c_vector, epsilon_check, gamma_from_s, gamma_upper_bound, optimal_partition, s_closed_form, MAX_ELL,
};
use cqlab_core::{BigRational, Ell};
use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn objective(k: &[BigRational], x: &[BigRational]) -> BigRational {
    let mut v = BigRational::zero();
    for i in 0..x.len() {
        for j in i + 1..x.len() {
            v += rat(2, 1) * &x[i] * &x[j];
        }
        v += (BigRational::one() - k[i].recip()) * &x[i] * &x[i];
    }
    v
}

proptest! {
    #[test]
    fn optimum_dominates_feasible_points(
        k in prop::collection::vec(1i64..=20, 1..=5),
        w in prop::collection::vec(0i64..=50, 5),
        m in 1i64..=200,
    ) {
        let ks: Vec<BigRational> = k.iter().map(|&v| rat(v, 1)).collect();
        let opt = optimal_partition(&ks, &rat(m, 1)).unwrap();
        prop_assert_eq!(opt.sizes.iter().sum::<BigRational>(), rat(m, 1));
        prop_assert_eq!(objective(&ks, &opt.sizes), opt.value.clone());
        let w = &w[..k.len()];
        let total: i64 = w.iter().sum();
        if total > 0 {
            let x: Vec<BigRational> = w.iter().map(|&v| rat(v * m, total)).collect();
            prop_assert!(objective(&ks, &x) <= opt.value);
        }
    }

    #[test]
    fn small_epsilon_accepted_large_rejected(ell in 3u32..=12, shift in 0u32..4) {
        prop_assert!(epsilon_check(ell, &rat(1, 1 << (ell + shift))));
        prop_assert!(!epsilon_check(ell, &rat(10, 1)));
    }
}

#[test]
fn gamma_bounds_monotone_and_below_half() {
    let mut prev = Ratio::new(0u64, 1);
    for ell in 2..=MAX_ELL {
        let g = gamma_upper_bound(Ell::Finite(ell)).unwrap();
        assert!(g >= prev && g < Ratio::new(1, 2), "ell={ell}: {g}");
        assert_eq!(g, gamma_from_s(c_vector(ell).unwrap().s_value));
        prev = g;
    }
    assert_eq!(gamma_upper_bound(Ell::Infinite).unwrap(), Ratio::new(1, 2));
}

#[test]
fn s_closed_form_matches_sums() {
    for ell in 2..=MAX_ELL {
        assert_eq!(s_closed_form(ell).unwrap(), c_vector(ell).unwrap().s_value, "ell={ell}");
    }
}

#[test]
fn default_epsilon_accepted() {
    for ell in 2..=10 {
        assert!(epsilon_check(ell, &rat(1, 1 << ell)), "ell={ell}");
    }
    assert!(!epsilon_check(2, &rat(0, 1)));
}
