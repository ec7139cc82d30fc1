use serde::{Serialize, Serializer};

use super::{check_delta, entropy, gamma, BoundError, GammaMode};
use crate::Ell;

/// Smallest admissible `p` is strictly above this.
const P_GUARD: f64 = 0.5 + 1e-12;
const M_TOL: f64 = 1e-12;
const ALPHA_TOL: f64 = 1e-9;
const SCAN_STEP: f64 = 1e-3;
const SCAN_FLOOR: f64 = 0.5;

fn check_eta(eta: f64) -> Result<(), BoundError> {
    if eta > 0.5 && eta <= 1.0 {
        Ok(())
    } else {
        Err(BoundError::EtaOutOfRange(eta))
    }
}

/// `p = (ηα²/2 − 2γm²)/(α²/2 − 2γm²)`, or `None` where the guard fails.
fn p_value(m: f64, alpha: f64, gamma: f64, eta: f64) -> Option<f64> {
    let a = alpha * alpha / 2.0 - 2.0 * gamma * m * m;
    if a <= 0.0 {
        return None;
    }
    let p = ((eta * alpha * alpha / 2.0 - 2.0 * gamma * m * m) / a).min(1.0);
    (p > P_GUARD).then_some(p)
}

fn f_raw(m: f64, alpha: f64, delta: f64, gamma: f64, eta: f64) -> Option<f64> {
    let p = p_value(m, alpha, gamma, eta)?;
    let a = alpha * alpha / 2.0 - 2.0 * gamma * m * m;
    Some(a * (1.0 - entropy(p)) - alpha + (2.0 - delta) * m)
}

fn fprime_raw(m: f64, alpha: f64, delta: f64, gamma: f64, eta: f64) -> Option<f64> {
    let p = p_value(m, alpha, gamma, eta)?;
    Some(-4.0 * gamma * m * (1.0 + p.log2()) + (2.0 - delta))
}

fn guarded<T>(v: Option<T>, m: f64, alpha: f64, gamma: f64, eta: f64) -> Result<T, BoundError> {
    v.ok_or_else(|| {
        let a = alpha * alpha / 2.0 - 2.0 * gamma * m * m;
        let p = (eta * alpha * alpha / 2.0 - 2.0 * gamma * m * m) / a;
        BoundError::POutOfRange { p, m, alpha }
    })
}

/// `(α²/2 − 2γm²)(1 − H(p)) − α + (2−δ)m`. Defined for `m ≥ 0` wherever
/// `p > 1/2`; this includes some `m > α/2`.
pub fn dense_f(m: f64, alpha: f64, delta: f64, gamma: f64, eta: f64) -> Result<f64, BoundError> {
    if m < 0.0 {
        return Err(BoundError::MOutOfRange { m, max: alpha / 2.0 });
    }
    guarded(f_raw(m, alpha, delta, gamma, eta), m, alpha, gamma, eta)
}

/// `−4γm(1 + log p) + (2 − δ)`, the derivative of [`dense_f`] in `m`.
pub fn dense_fprime(m: f64, alpha: f64, delta: f64, gamma: f64, eta: f64) -> Result<f64, BoundError> {
    if m < 0.0 {
        return Err(BoundError::MOutOfRange { m, max: alpha / 2.0 });
    }
    guarded(fprime_raw(m, alpha, delta, gamma, eta), m, alpha, gamma, eta)
}

/// Where to look for the first root of `f′`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum M1Domain {
    /// `[0, α/2]`.
    #[default]
    HalfAlpha,
    /// Every `m ≥ 0` with `p > 1/2`.
    Extended,
}

/// Largest `m` with `p` above the guard, capped at `α/2` for the default
/// domain.
fn m_limit(alpha: f64, gamma: f64, eta: f64, domain: M1Domain) -> f64 {
    // p = 1/2 at m = α √((2η − 1)/(4γ)).
    let edge = alpha * ((2.0 * eta - 1.0) / (4.0 * gamma)).sqrt();
    let mut hi = edge * (1.0 - 1e-9);
    if domain == M1Domain::HalfAlpha {
        hi = hi.min(alpha / 2.0);
    }
    while hi > 0.0 && p_value(hi, alpha, gamma, eta).is_none() {
        hi *= 1.0 - 1e-9;
    }
    hi
}

fn bisect(mut lo: f64, mut hi: f64, tol: f64, positive_at_lo: bool, mut g: impl FnMut(f64) -> Option<f64>) -> f64 {
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let above = g(mid).is_some_and(|v| v > 0.0);
        if above == positive_at_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Smallest root of `f′` in the domain, or `None` when `f′ > 0` throughout.
///
/// `f′(0) = 2 − δ ≥ 0` and `f′` is convex in `m`, so either `f′` is
/// non-positive at the right end and has exactly one root, or the root (if
/// any) lies left of the minimiser, found by golden-section search.
pub fn solve_m1(alpha: f64, delta: f64, gamma: f64, eta: f64, domain: M1Domain) -> Result<Option<f64>, BoundError> {
    check_delta(delta)?;
    check_eta(eta)?;
    if delta == 2.0 {
        return Ok(Some(0.0));
    }
    if p_value(0.0, alpha, gamma, eta).is_none() {
        return Err(BoundError::POutOfRange { p: eta, m: 0.0, alpha });
    }
    let fp = |m: f64| fprime_raw(m, alpha, delta, gamma, eta);
    let hi = m_limit(alpha, gamma, eta, domain);
    if fp(hi).is_some_and(|v| v <= 0.0) {
        return Ok(Some(bisect(0.0, hi, M_TOL, true, fp)));
    }
    let invphi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (0.0, hi);
    let mut c = b - invphi * (b - a);
    let mut d = a + invphi * (b - a);
    let val = |m: f64| fp(m).unwrap_or(f64::INFINITY);
    let (mut fc, mut fd) = (val(c), val(d));
    while b - a > M_TOL {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = val(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = val(d);
        }
        if fc <= 0.0 || fd <= 0.0 {
            let at = if fc <= 0.0 { c } else { d };
            return Ok(Some(bisect(0.0, at, M_TOL, true, fp)));
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum M1Case {
    /// `m₁ ≤ α₁/2`.
    WithinHalf,
    /// Found only in the extended domain, `m₁ > α₁/2`.
    BeyondHalf,
    /// `f′ > 0` on the domain at every scanned `α`, so `α₁ = ∞`.
    NoRoot,
}

/// Final sign-change interval of a root search.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Bracket {
    pub branch: &'static str,
    pub lo: f64,
    pub hi: f64,
    /// Whether the bracket lies above the trivial bound.
    pub extended_upward: bool,
}

fn ser_opt<S: Serializer>(v: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
    ser_f64(&v.unwrap_or(f64::INFINITY), s)
}

/// Non-finite values as the strings `inf` and `nan`.
pub(crate) fn ser_f64<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
    if v.is_finite() {
        s.serialize_f64(*v)
    } else {
        s.serialize_str(&super::fmt_sig(*v))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DenseSolution {
    pub delta: f64,
    pub ell: Ell,
    pub eta: f64,
    pub gamma: f64,
    /// `None` stands for infinity.
    #[serde(serialize_with = "ser_opt")]
    pub m1: Option<f64>,
    /// `α₂/2`.
    #[serde(serialize_with = "ser_f64")]
    pub m2: f64,
    #[serde(serialize_with = "ser_opt")]
    pub alpha1: Option<f64>,
    /// Infinite when `p ≤ 1/2` on `m = α/2`.
    #[serde(serialize_with = "ser_f64")]
    pub alpha2: f64,
    #[serde(serialize_with = "ser_f64")]
    pub alpha0: f64,
    /// `p` at the branch attaining `α₀`.
    #[serde(serialize_with = "ser_f64")]
    pub p_at_opt: f64,
    pub binding: &'static str,
    pub m1_case: M1Case,
    pub trivial: f64,
    pub brackets: Vec<Bracket>,
}

/// Largest root of `F` where `F` turns from non-positive to positive.
///
/// If `F(top) > 0`, scans down from `top` in steps of `1e-3` to the first
/// sign change between two defined points. Otherwise doubles the upper end
/// until `F` is positive and bisects the last doubling interval. Returns
/// `None` when no sign change is found.
fn largest_root(branch: &'static str, top: f64, mut f: impl FnMut(f64) -> Option<f64>) -> Option<(f64, Bracket)> {
    let positive = |v: Option<f64>| v.is_some_and(|x| x > 0.0);
    let mut hi = top;
    let mut fhi = f(hi);
    if !positive(fhi) {
        for _ in 0..60 {
            let lo = hi;
            hi *= 2.0;
            fhi = f(hi);
            if positive(fhi) {
                if f(lo).is_some_and(|v| v <= 0.0) {
                    let root = bisect(lo, hi, ALPHA_TOL, false, &mut f);
                    return Some((
                        root,
                        Bracket {
                            branch,
                            lo,
                            hi,
                            extended_upward: true,
                        },
                    ));
                }
                break;
            }
        }
        if !positive(fhi) {
            return None;
        }
    }
    let mut a = hi;
    let mut fa = fhi;
    let mut i = 0u64;
    while a > SCAN_FLOOR {
        i += 1;
        let b = hi - i as f64 * SCAN_STEP;
        let fb = f(b);
        if positive(fa) && fb.is_some_and(|v| v <= 0.0) {
            let root = bisect(b, a, ALPHA_TOL, false, &mut f);
            return Some((
                root,
                Bracket {
                    branch,
                    lo: b,
                    hi: a,
                    extended_upward: a > top,
                },
            ));
        }
        a = b;
        fa = fb;
    }
    None
}

/// Upper bound `α₀ = min(α₁, α₂)` for finding a density-`η` subgraph.
///
/// `F₁(α) = f(m₁(α), α)` and `F₂(α) = f(α/2, α)`; `α_i` is the largest root
/// of `F_i`.
pub fn dense_alpha_upper(
    delta: f64,
    ell: Ell,
    eta: f64,
    mode: GammaMode,
    domain: M1Domain,
) -> Result<DenseSolution, BoundError> {
    check_delta(delta)?;
    check_eta(eta)?;
    let g = gamma(ell, mode)?;
    let trivial = trivial_dense_bound(eta)?;

    let f1 = |a: f64| -> Option<f64> {
        let m = solve_m1(a, delta, g, eta, domain).ok()??;
        f_raw(m, a, delta, g, eta)
    };
    let f2 = |a: f64| f_raw(a / 2.0, a, delta, g, eta);

    let mut brackets = Vec::new();
    // On m = α/2 the value of p does not depend on α; at or below the guard
    // the second constraint never binds.
    let alpha2 = if p_value(1.0, 2.0, g, eta).is_none() {
        f64::INFINITY
    } else {
        let (a, b) = largest_root("alpha2", trivial, f2).ok_or(BoundError::NoRoot("F2"))?;
        brackets.push(b);
        a
    };
    let alpha1 = largest_root("alpha1", trivial, f1).map(|(a, b)| {
        brackets.push(b);
        a
    });
    let m1 = match alpha1 {
        Some(a) => solve_m1(a, delta, g, eta, domain)?,
        None => None,
    };
    let m1_case = match (alpha1, m1) {
        (Some(a), Some(m)) if m > a / 2.0 => M1Case::BeyondHalf,
        (Some(_), Some(_)) => M1Case::WithinHalf,
        _ => M1Case::NoRoot,
    };
    let (alpha0, binding, p_at_opt) = match (alpha1, m1) {
        (Some(a1), Some(m)) if a1 < alpha2 => (a1, "alpha1", p_value(m, a1, g, eta)),
        _ if alpha2.is_infinite() => (alpha2, "none", None),
        _ => (alpha2, "alpha2", p_value(alpha2 / 2.0, alpha2, g, eta)),
    };
    Ok(DenseSolution {
        delta,
        ell,
        eta,
        gamma: g,
        m1,
        m2: alpha2 / 2.0,
        alpha1,
        alpha2,
        alpha0,
        p_at_opt: p_at_opt.unwrap_or(f64::NAN),
        binding,
        m1_case,
        trivial,
        brackets,
    })
}

/// `2/(1 − H(η))`, the size of the largest density-`η` subgraph.
pub fn trivial_dense_bound(eta: f64) -> Result<f64, BoundError> {
    check_eta(eta)?;
    Ok(2.0 / (1.0 - entropy(eta)))
}

/// `δ/((1−γ)(1 − H((η−γ)/(1−γ))))` at `δ = 1` for `ℓ ∈ {2, 3, ∞}`.
pub fn alpha2_closed_form(ell: Ell, eta: f64, delta: f64) -> Result<f64, BoundError> {
    if delta != 1.0 {
        return Err(BoundError::DeltaOutOfRange(delta));
    }
    check_eta(eta)?;
    if !matches!(ell, Ell::Finite(2 | 3) | Ell::Infinite) {
        return Err(BoundError::EllUnsupported(
            ell,
            "closed form only for ell in {2, 3, inf}",
        ));
    }
    let g = gamma(ell, GammaMode::Exact)?;
    let p = (eta - g) / (1.0 - g);
    if p <= 0.5 {
        return Err(BoundError::POutOfRange {
            p,
            m: f64::NAN,
            alpha: f64::NAN,
        });
    }
    Ok(delta / ((1.0 - g) * (1.0 - entropy(p))))
}

/// The `η` at which `α₀` equals `target`, by bisection on `(3/4, 1]` to
/// `1e-6`. `α₀` decreases in `η`.
pub fn density_threshold(delta: f64, ell: Ell, target: f64, mode: GammaMode) -> Result<f64, BoundError> {
    check_delta(delta)?;
    let alpha0 = |eta: f64| dense_alpha_upper(delta, ell, eta, mode, M1Domain::HalfAlpha).map(|s| s.alpha0);
    let (mut lo, mut hi) = (0.75 + 1e-6, 1.0);
    let at_lo = alpha0(lo)?;
    let at_hi = alpha0(hi)?;
    if at_lo < target {
        return Err(BoundError::NoCrossing { target, side: "below" });
    }
    if at_hi > target {
        return Err(BoundError::NoCrossing { target, side: "above" });
    }
    while hi - lo > 1e-6 {
        let mid = 0.5 * (lo + hi);
        if alpha0(mid)? > target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bound_calc::clique_alpha_upper;

    const INF: Ell = Ell::Infinite;

    fn solve(delta: f64, ell: Ell, eta: f64) -> DenseSolution {
        dense_alpha_upper(delta, ell, eta, GammaMode::Upper, M1Domain::HalfAlpha).unwrap()
    }

    #[test]
    fn f_special_cases() {
        let (a, d, g) = (2.3, 1.2, 0.375);
        let eta = 0.9;
        let expect = a * a / 2.0 * (1.0 - entropy(eta)) - a;
        assert!((dense_f(0.0, a, d, g, eta).unwrap() - expect).abs() < 1e-14);
        assert!((dense_fprime(0.0, a, d, g, eta).unwrap() - (2.0 - d)).abs() < 1e-15);
        for m in [0.0, 0.3, 0.7, a / 2.0] {
            let lhs = super::super::clique_lhs(a, m, d, g).unwrap();
            assert!((dense_f(m, a, d, g, 1.0).unwrap() - lhs).abs() < 1e-12);
        }
        assert!(matches!(
            dense_f(a / 2.0, a, d, 0.5, 0.74),
            Err(BoundError::POutOfRange { .. })
        ));
    }

    #[test]
    fn fprime_matches_finite_difference() {
        let (a, d, g, eta) = (2.4, 1.0, 0.5, 0.951);
        for m in [0.1, 0.5, 0.9] {
            let h = 1e-6;
            let fd = (dense_f(m + h, a, d, g, eta).unwrap() - dense_f(m - h, a, d, g, eta).unwrap()) / (2.0 * h);
            assert!((fd - dense_fprime(m, a, d, g, eta).unwrap()).abs() < 1e-6);
        }
    }

    #[test]
    fn m1_examples() {
        for (d, g) in [(1.0, 0.5), (1.4, 0.375), (1.0, 0.375)] {
            let a = 2.0;
            let m = solve_m1(a, d, g, 1.0, M1Domain::HalfAlpha).unwrap();
            let closed = (2.0 - d) / (4.0 * g);
            if closed <= a / 2.0 {
                assert!((m.unwrap() - closed).abs() < 1e-10);
            }
        }
        assert_eq!(solve_m1(2.0, 2.0, 0.5, 0.9, M1Domain::HalfAlpha).unwrap(), Some(0.0));
        // Grid oracle for the smallest sign change.
        let (a, d, g, eta) = (2.48, 1.0, 0.5, 0.951);
        let m = solve_m1(a, d, g, eta, M1Domain::HalfAlpha).unwrap().unwrap();
        let step = 1e-6;
        let mut prev = 0.0;
        let mut x = step;
        while dense_fprime(x, a, d, g, eta).unwrap() > 0.0 {
            prev = x;
            x += step;
        }
        assert!(m > prev - 1e-9 && m <= x + 1e-9 && m < a / 2.0, "{prev} {m} {x}");
    }

    #[test]
    fn headline_infinite() {
        let s = solve(1.0, INF, 0.951);
        assert!((s.alpha0 - 2.48227).abs() < 5e-5, "{s:?}");
        assert!(s.p_at_opt > 0.5 && s.p_at_opt <= 1.0);
    }

    #[test]
    fn generalises_clique_bound() {
        for d in [1.0, 1.25, 1.5, 1.75] {
            for ell in [Ell::Finite(3), INF] {
                let s = solve(d, ell, 1.0);
                let c = clique_alpha_upper(d, ell, GammaMode::Upper).unwrap();
                assert!((s.alpha0 - c).abs() < 1e-6, "d {d} ell {ell}: {} vs {c}", s.alpha0);
            }
        }
    }

    #[test]
    fn alpha2_agrees_with_closed_form() {
        for (ell, eta) in [(Ell::Finite(2), 0.934), (Ell::Finite(3), 0.95), (INF, 0.9), (INF, 1.0)] {
            let s = solve(1.0, ell, eta);
            let c = alpha2_closed_form(ell, eta, 1.0).unwrap();
            assert!((s.alpha2 - c).abs() < 1e-8, "{ell} {eta}");
        }
        assert!((alpha2_closed_form(Ell::Finite(3), 1.0, 1.0).unwrap() - 1.6).abs() < 1e-15);
        assert!((alpha2_closed_form(Ell::Finite(2), 0.934, 1.0).unwrap() - 2.3382).abs() < 5e-5);
        assert!(alpha2_closed_form(Ell::Finite(4), 0.9, 1.0).is_err());
        assert!(alpha2_closed_form(INF, 0.9, 1.5).is_err());
    }

    #[test]
    fn trivial_bound() {
        assert_eq!(trivial_dense_bound(1.0).unwrap(), 2.0);
        assert!(trivial_dense_bound(0.5 + 1e-7).unwrap() > 1e3);
        assert!(trivial_dense_bound(0.5).is_err());
    }

    #[test]
    fn threshold() {
        let t = density_threshold(1.0, INF, 2.0, GammaMode::Upper).unwrap();
        assert!((t - 0.98226).abs() < 5e-5, "{t}");
        let far = trivial_dense_bound(0.75 + 1e-6).unwrap() + 0.1;
        assert!(matches!(
            density_threshold(1.0, INF, far, GammaMode::Upper),
            Err(BoundError::NoCrossing { .. })
        ));
    }
}
