//! Clique and dense-subgraph query bounds: closed forms, the inequality
//! engines they come from, and the root finding behind the dense bound.
//!
//! All logarithms are base 2. `α` is in units of `log₂ n`.

mod dense;
mod sweep;

pub use dense::{
    alpha2_closed_form, dense_alpha_upper, dense_f, dense_fprime, density_threshold, solve_m1, trivial_dense_bound,
    Bracket, DenseSolution, M1Case, M1Domain,
};
pub use sweep::{emit_sweep, fmt_sig, sweep_csv, table_l2, SweepRow, TableColumn, SWEEP_HEADER, TABLE_L2_ETAS};

use crate::partition_bounds::gamma_upper_bound;
use crate::Ell;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum BoundError {
    #[error("delta = {0} outside [1, 2]")]
    DeltaOutOfRange(f64),
    #[error("eta = {0} outside (1/2, 1]")]
    EtaOutOfRange(f64),
    #[error("probability {0} outside [0, 1]")]
    ProbabilityOutOfRange(f64),
    #[error("ell = {0}: {1}")]
    EllUnsupported(Ell, &'static str),
    #[error("m = {m} outside [0, {max}]")]
    MOutOfRange { m: f64, max: f64 },
    #[error("p = {p} is not above 1/2 at m = {m}, alpha = {alpha}")]
    POutOfRange { p: f64, m: f64, alpha: f64 },
    #[error("no root of {0} found")]
    NoRoot(&'static str),
    #[error("no crossing: alpha0 stays {side} the target {target} for eta in (3/4, 1]")]
    NoCrossing { target: f64, side: &'static str },
    #[error("invalid range: {0}")]
    InvalidRange(String),
}

/// Which value of `γ(ℓ)` feeds the bounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GammaMode {
    /// Known values only: `ℓ ∈ {2, 3, ∞}`.
    Exact,
    /// Known values, and the proven upper bound for `ℓ ≥ 4`.
    #[default]
    Upper,
}

impl std::str::FromStr for GammaMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "exact" => Ok(GammaMode::Exact),
            "upper" => Ok(GammaMode::Upper),
            _ => Err(format!("unknown gamma mode `{s}` (expected exact or upper)")),
        }
    }
}

pub fn gamma(ell: Ell, mode: GammaMode) -> Result<f64, BoundError> {
    match ell {
        Ell::Finite(0 | 1) => Err(BoundError::EllUnsupported(ell, "gamma(1) = 0 gives no bound")),
        Ell::Finite(2) => Ok(0.25),
        Ell::Finite(3) => Ok(0.375),
        Ell::Infinite => Ok(0.5),
        Ell::Finite(_) if mode == GammaMode::Exact => Err(BoundError::EllUnsupported(
            ell,
            "gamma is unknown for ell >= 4; use the upper mode",
        )),
        Ell::Finite(_) => {
            let r = gamma_upper_bound(ell)
                .map_err(|_| BoundError::EllUnsupported(ell, "too large for the c-vector arithmetic"))?;
            Ok(*r.numer() as f64 / *r.denom() as f64)
        }
    }
}

pub(crate) fn check_delta(delta: f64) -> Result<(), BoundError> {
    if (1.0..=2.0).contains(&delta) {
        Ok(())
    } else {
        Err(BoundError::DeltaOutOfRange(delta))
    }
}

/// `H(p) = −p log p − (1−p) log(1−p)` with `H(0) = H(1) = 0`.
pub fn binary_entropy(p: f64) -> Result<f64, BoundError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(BoundError::ProbabilityOutOfRange(p));
    }
    Ok(entropy(p))
}

pub(crate) fn entropy(p: f64) -> f64 {
    let term = |x: f64| if x <= 0.0 { 0.0 } else { -x * x.log2() };
    term(p) + term(1.0 - p)
}

/// `α²/2 − α − 2γm² + (2−δ)m`.
pub fn clique_lhs(alpha: f64, m: f64, delta: f64, gamma: f64) -> Result<f64, BoundError> {
    if !(0.0..=alpha / 2.0).contains(&m) {
        return Err(BoundError::MOutOfRange { m, max: alpha / 2.0 });
    }
    Ok(alpha * alpha / 2.0 - alpha - 2.0 * gamma * m * m + (2.0 - delta) * m)
}

/// Upper bound on the clique exponent: `4δ/3` for `ℓ = 2` and
/// `δ ≤ 6/5`, otherwise `1 + √(1 − (2−δ)²/(4γ))`.
pub fn clique_alpha_upper(delta: f64, ell: Ell, mode: GammaMode) -> Result<f64, BoundError> {
    check_delta(delta)?;
    let g = gamma(ell, mode)?;
    if ell == Ell::Finite(2) && delta <= 1.2 {
        return Ok(4.0 * delta / 3.0);
    }
    Ok(1.0 + (1.0 - (2.0 - delta).powi(2) / (4.0 * g)).sqrt())
}

/// `1 + √(1 − (2−δ)²/(2 − 1/(3·2^{ℓ−3} − ℓ + 2)))` for finite `ℓ ≥ 3`.
pub fn clique_alpha_explicit(delta: f64, ell: u32) -> Result<f64, BoundError> {
    check_delta(delta)?;
    if ell < 3 {
        return Err(BoundError::EllUnsupported(Ell::Finite(ell), "needs ell >= 3"));
    }
    if ell > 62 {
        return Err(BoundError::EllUnsupported(Ell::Finite(ell), "too large"));
    }
    let inner = 3.0 * 2f64.powi(ell as i32 - 3) - f64::from(ell) + 2.0;
    Ok(1.0 + (1.0 - (2.0 - delta).powi(2) / (2.0 - 1.0 / inner)).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn entropy_values() {
        assert_eq!(binary_entropy(0.5).unwrap(), 1.0);
        assert_eq!(binary_entropy(1.0).unwrap(), 0.0);
        assert_eq!(binary_entropy(0.0).unwrap(), 0.0);
        assert!(binary_entropy(1.1).is_err());
        assert!(2.0 / (1.0 - binary_entropy(0.951).unwrap()) < 2.7861);
    }

    #[test]
    fn lhs_roots() {
        assert_eq!(clique_lhs(2.0, 0.0, 2.0, 0.3).unwrap(), 0.0);
        let d: f64 = 1.3;
        let a = 1.0 + (1.0 - (2.0 - d).powi(2) / 2.0).sqrt();
        assert!(clique_lhs(a, (2.0 - d) / 2.0, d, 0.5).unwrap().abs() < 1e-12);
        let a = 4.0 / 3.0;
        assert!(clique_lhs(a, a / 2.0, 1.0, 0.25).unwrap().abs() < 1e-12);
        assert!(clique_lhs(2.0, 1.5, 1.0, 0.25).is_err());
    }

    #[test]
    fn clique_values() {
        let c = |d, l| clique_alpha_upper(d, l, GammaMode::Upper).unwrap();
        assert!((c(1.0, Ell::Finite(3)) - (1.0 + 1.0 / 3f64.sqrt())).abs() < 1e-12);
        assert_eq!(c(2.0, Ell::Infinite), 2.0);
        assert!((c(1.0, Ell::Finite(2)) - 4.0 / 3.0).abs() < 1e-15);
        let right = 1.0 + (1.0 - 0.8f64.powi(2)).sqrt();
        assert!((c(1.2, Ell::Finite(2)) - right).abs() < 1e-12);
        assert!(clique_alpha_upper(1.0, Ell::Finite(1), GammaMode::Upper).is_err());
        assert!(clique_alpha_upper(1.0, Ell::Finite(4), GammaMode::Exact).is_err());
        assert!(clique_alpha_upper(0.5, Ell::Finite(3), GammaMode::Upper).is_err());
    }

    #[test]
    fn explicit_form_matches_upper_mode() {
        assert!((clique_alpha_explicit(1.0, 4).unwrap() - (1.0 + (3.0f64 / 7.0).sqrt())).abs() < 1e-12);
        for ell in 3..=12 {
            for d in [1.0, 1.3, 1.7, 2.0] {
                let a = clique_alpha_explicit(d, ell).unwrap();
                let b = clique_alpha_upper(d, Ell::Finite(ell), GammaMode::Upper).unwrap();
                assert!((a - b).abs() < 1e-12, "ell {ell} delta {d}");
            }
        }
        assert!(clique_alpha_explicit(1.0, 2).is_err());
    }
}
