use cqlab_core::bound_calc::{
    alpha2_closed_form, clique_alpha_upper, clique_lhs, dense_alpha_upper, dense_f, density_threshold, emit_sweep,
    gamma, solve_m1, trivial_dense_bound, GammaMode, M1Domain, SWEEP_HEADER,
};
use cqlab_core::Ell;
use proptest::prelude::*;

const ELLS: [Ell; 5] = [
    Ell::Finite(2),
    Ell::Finite(3),
    Ell::Finite(4),
    Ell::Finite(6),
    Ell::Infinite,
];

fn alpha0(delta: f64, ell: Ell, eta: f64) -> f64 {
    dense_alpha_upper(delta, ell, eta, GammaMode::Upper, M1Domain::HalfAlpha)
        .unwrap()
        .alpha0
}

#[test]
fn dense_monotone_in_delta_ell_and_eta() {
    for &ell in &ELLS {
        for eta in [0.8, 0.9, 0.95, 0.99] {
            let mut prev = 0.0;
            for i in 0..=16 {
                let d = 1.0 + 0.05 * i as f64;
                let a = alpha0(d, ell, eta);
                assert!(a >= prev - 1e-7, "delta {d}, {ell}, eta {eta}: {a} < {prev}");
                prev = a;
            }
        }
    }
    for d in [1.0, 1.3, 1.6, 1.9] {
        for eta in [0.8, 0.9, 0.99] {
            let vals: Vec<f64> = ELLS.iter().map(|&l| alpha0(d, l, eta)).collect();
            assert!(
                vals.windows(2).all(|w| w[0] <= w[1] + 1e-7),
                "delta {d}, eta {eta}: {vals:?}"
            );
        }
        for &ell in &ELLS {
            let vals: Vec<f64> = (0..=25).map(|i| alpha0(d, ell, 0.76 + 0.0096 * i as f64)).collect();
            assert!(
                vals.windows(2).all(|w| w[1] <= w[0] + 1e-7),
                "delta {d}, {ell}: {vals:?}"
            );
        }
    }
}

#[test]
fn dense_below_trivial_bound() {
    for &ell in &ELLS {
        for i in 0..20 {
            let d = 1.0 + 0.05 * i as f64;
            for eta in [0.76, 0.85, 0.93, 0.999, 1.0] {
                let a = alpha0(d, ell, eta);
                assert!(
                    a < trivial_dense_bound(eta).unwrap(),
                    "delta {d}, {ell}, eta {eta}: {a}"
                );
            }
        }
    }
}

#[test]
fn justification_inequality() {
    for ell in [Ell::Finite(3), Ell::Finite(4), Ell::Finite(8), Ell::Infinite] {
        let g = gamma(ell, GammaMode::Upper).unwrap();
        for i in 0..100 {
            let d = 1.0 + i as f64 / 100.0;
            let a = clique_alpha_upper(d, ell, GammaMode::Upper).unwrap();
            assert!(2.0 - d <= 2.0 * g * a + 1e-12, "delta {d}, {ell}");
        }
    }
}

#[test]
fn clique_bound_is_the_largest_root() {
    for &ell in &ELLS {
        let g = gamma(ell, GammaMode::Upper).unwrap();
        for i in 0..=20 {
            let d = 1.0 + 0.05 * i as f64;
            let a = clique_alpha_upper(d, ell, GammaMode::Upper).unwrap();
            // Maximising over m, the left-hand side vanishes at the bound.
            let m = ((2.0 - d) / (4.0 * g)).min(a / 2.0);
            assert!(clique_lhs(a, m, d, g).unwrap().abs() < 1e-9, "delta {d}, {ell}");
            assert!(clique_lhs(a + 1e-3, m, d, g).unwrap() > 0.0);
        }
    }
}

#[test]
fn alpha2_matches_closed_form() {
    for &ell in &ELLS {
        for eta in [0.8, 0.9, 0.97] {
            for d in [1.0, 1.5] {
                let s = dense_alpha_upper(d, ell, eta, GammaMode::Upper, M1Domain::HalfAlpha).unwrap();
                if let Ok(c) = alpha2_closed_form(ell, eta, d) {
                    assert!(
                        (s.alpha2 - c).abs() < 1e-7,
                        "{ell} eta {eta} delta {d}: {} vs {c}",
                        s.alpha2
                    );
                }
            }
        }
    }
}

#[test]
fn threshold_inverts_the_bound() {
    for (d, ell, target) in [
        (1.0, Ell::Infinite, 2.0),
        (1.0, Ell::Finite(3), 1.9),
        (1.5, Ell::Infinite, 2.3),
    ] {
        let eta = density_threshold(d, ell, target, GammaMode::Upper).unwrap();
        let a = alpha0(d, ell, eta);
        assert!(
            (a - target).abs() < 1e-4,
            "({d}, {ell}, {target}): eta {eta}, alpha0 {a}"
        );
    }
}

#[test]
fn sweep_rows_agree_with_pointwise_solutions() {
    let rows = emit_sweep(1.2, &[Ell::Finite(3), Ell::Infinite], 0.8, 0.9, 0.05, GammaMode::Upper).unwrap();
    assert_eq!(SWEEP_HEADER.split(',').count(), 8);
    for r in rows.iter().filter(|r| r.eta < 1.0) {
        let a = alpha0(1.2, r.ell, r.eta);
        assert_eq!(r.alpha0, a);
    }
    assert!(rows.iter().any(|r| r.eta == 1.0));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn roots_vanish(delta in 1.0f64..1.95, eta in 0.77f64..=1.0, li in 0usize..5) {
        let ell = ELLS[li];
        let g = gamma(ell, GammaMode::Upper).unwrap();
        let s = dense_alpha_upper(delta, ell, eta, GammaMode::Upper, M1Domain::HalfAlpha).unwrap();
        if let Some(a1) = s.alpha1 {
            let m = solve_m1(a1, delta, g, eta, M1Domain::HalfAlpha).unwrap().unwrap();
            prop_assert!(dense_f(m, a1, delta, g, eta).unwrap().abs() < 1e-8);
        }
        if s.alpha2.is_finite() {
            prop_assert!(dense_f(s.alpha2 / 2.0, s.alpha2, delta, g, eta).unwrap().abs() < 1e-8);
        }
        prop_assert!(s.alpha0 <= s.alpha2);
        prop_assert!(s.alpha0 < s.trivial);
    }

    #[test]
    fn m1_is_the_first_sign_change(alpha in 1.5f64..3.0, delta in 1.0f64..1.9, eta in 0.8f64..1.0) {
        let g = 0.5;
        if let Some(m1) = solve_m1(alpha, delta, g, eta, M1Domain::HalfAlpha).unwrap() {
            let fp = |m: f64| cqlab_core::bound_calc::dense_fprime(m, alpha, delta, g, eta).unwrap();
            prop_assert!(fp(m1).abs() < 1e-6);
            for i in 0..200 {
                let m = m1 * i as f64 / 200.0;
                prop_assert!(fp(m) > -1e-9);
            }
        }
    }
}
