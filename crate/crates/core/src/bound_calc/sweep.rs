use rayon::prelude::*;
use serde::Serialize;

use super::dense::ser_f64;
use super::{clique_alpha_upper, dense_alpha_upper, trivial_dense_bound, BoundError, GammaMode, M1Case, M1Domain};
use crate::Ell;

pub const SWEEP_HEADER: &str = "ell,eta,trivial,alpha0,alpha1,alpha2,m1,p_at_opt";

/// One `(ℓ, η)` point. `alpha1` and `m1` are `inf` when no root exists;
/// every numeric field is NaN when the solver fails at that point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub ell: Ell,
    pub eta: f64,
    #[serde(serialize_with = "ser_f64")]
    pub trivial: f64,
    #[serde(serialize_with = "ser_f64")]
    pub alpha0: f64,
    #[serde(serialize_with = "ser_f64")]
    pub alpha1: f64,
    #[serde(serialize_with = "ser_f64")]
    pub alpha2: f64,
    #[serde(serialize_with = "ser_f64")]
    pub m1: f64,
    #[serde(serialize_with = "ser_f64")]
    pub p_at_opt: f64,
}

fn grid(from: f64, to: f64, step: f64) -> Result<Vec<f64>, BoundError> {
    let valid = step > 0.0 && from <= to && from > 0.5 && to <= 1.0;
    if !valid {
        return Err(BoundError::InvalidRange(format!(
            "need 1/2 < from <= to <= 1 and step > 0 (got {from}..{to} step {step})"
        )));
    }
    let count = ((to - from) / step + 1e-9).floor() as usize;
    Ok((0..=count)
        .map(|i| ((from + i as f64 * step) * 1e12).round() / 1e12)
        .collect())
}

fn row(delta: f64, ell: Ell, eta: f64, mode: GammaMode) -> SweepRow {
    let trivial = trivial_dense_bound(eta).unwrap_or(f64::NAN);
    match dense_alpha_upper(delta, ell, eta, mode, M1Domain::HalfAlpha) {
        Ok(s) => SweepRow {
            ell,
            eta,
            trivial,
            alpha0: s.alpha0,
            alpha1: s.alpha1.unwrap_or(f64::INFINITY),
            alpha2: s.alpha2,
            m1: s.m1.unwrap_or(f64::INFINITY),
            p_at_opt: s.p_at_opt,
        },
        Err(_) => SweepRow {
            ell,
            eta,
            trivial,
            alpha0: f64::NAN,
            alpha1: f64::NAN,
            alpha2: f64::NAN,
            m1: f64::NAN,
            p_at_opt: f64::NAN,
        },
    }
}

/// Rows for every `ℓ` (outer) and `η` on the grid (inner). When the grid
/// stops short of 1, each `ℓ` also gets an `η = 1` row whose `alpha0` is the
/// closed-form clique bound and whose trivial bound is 2.
pub fn emit_sweep(
    delta: f64,
    ells: &[Ell],
    eta_from: f64,
    eta_to: f64,
    step: f64,
    mode: GammaMode,
) -> Result<Vec<SweepRow>, BoundError> {
    super::check_delta(delta)?;
    for &ell in ells {
        super::gamma(ell, mode)?;
    }
    let etas = grid(eta_from, eta_to, step)?;
    let add_one = etas.last().is_some_and(|&e| e < 1.0 - 1e-12);
    let points: Vec<(Ell, f64)> = ells
        .iter()
        .flat_map(|&ell| {
            let tail = add_one.then_some(1.0);
            etas.iter().copied().chain(tail).map(move |eta| (ell, eta))
        })
        .collect();
    points
        .par_iter()
        .map(|&(ell, eta)| {
            let mut r = row(delta, ell, eta, mode);
            if add_one && eta == 1.0 {
                r.alpha0 = clique_alpha_upper(delta, ell, mode)?;
                r.trivial = 2.0;
            }
            Ok(r)
        })
        .collect()
}

/// Nine significant digits; `inf` and `nan` spelled out.
pub fn fmt_sig(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let e = x.abs().log10().floor() as i32;
    if !(-4..9).contains(&e) {
        format!("{x:.8e}")
    } else {
        format!("{:.*}", (8 - e) as usize, x)
    }
}

pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from(SWEEP_HEADER);
    out.push('\n');
    for r in rows {
        let fields = [r.eta, r.trivial, r.alpha0, r.alpha1, r.alpha2, r.m1, r.p_at_opt];
        out.push_str(&r.ell.to_string());
        for v in fields {
            out.push(',');
            out.push_str(&fmt_sig(v));
        }
        out.push('\n');
    }
    out
}

pub const TABLE_L2_ETAS: [f64; 8] = [0.930, 0.931, 0.932, 0.933, 0.934, 0.935, 0.936, 0.937];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TableColumn {
    pub eta: f64,
    #[serde(serialize_with = "ser_f64")]
    pub alpha1: f64,
    pub alpha2: f64,
    #[serde(serialize_with = "ser_f64")]
    pub m1: f64,
    pub m1_case: M1Case,
}

/// `α₁` and `α₂` for `δ = 1`, `ℓ = 2` across the crossover region. `m₁` is
/// searched over every `m` with `p > 1/2`; at `η = 0.937` it passes `α/2`.
pub fn table_l2() -> Result<Vec<TableColumn>, BoundError> {
    TABLE_L2_ETAS
        .par_iter()
        .map(|&eta| {
            let s = dense_alpha_upper(1.0, Ell::Finite(2), eta, GammaMode::Exact, M1Domain::Extended)?;
            Ok(TableColumn {
                eta,
                alpha1: s.alpha1.unwrap_or(f64::INFINITY),
                alpha2: s.alpha2,
                m1: s.m1.unwrap_or(f64::INFINITY),
                m1_case: s.m1_case,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formatting() {
        assert_eq!(fmt_sig(2.482268012345), "2.48226801");
        assert_eq!(fmt_sig(0.951), "0.951000000");
        assert_eq!(fmt_sig(12.5), "12.5000000");
        assert_eq!(fmt_sig(f64::INFINITY), "inf");
        assert_eq!(fmt_sig(f64::NAN), "nan");
        assert_eq!(fmt_sig(1.5e12), "1.50000000e12");
    }

    #[test]
    fn grid_points() {
        let g = grid(0.98, 0.999, 0.001).unwrap();
        assert_eq!(g.len(), 20);
        assert_eq!(g[19], 0.999);
        assert!(grid(0.4, 0.9, 0.1).is_err());
        assert!(grid(0.9, 0.8, 0.1).is_err());
    }

    #[test]
    fn sweep_appends_eta_one() {
        let rows = emit_sweep(
            1.0,
            &[Ell::Infinite, Ell::Finite(3)],
            0.98,
            0.99,
            0.01,
            GammaMode::Upper,
        )
        .unwrap();
        assert_eq!(rows.len(), 6);
        let last = &rows[2];
        assert_eq!(last.eta, 1.0);
        assert!((last.alpha0 - (1.0 + 0.5f64.sqrt())).abs() < 1e-12);
        assert_eq!(last.trivial, 2.0);
        assert!((rows[5].alpha0 - (1.0 + 1.0 / 3f64.sqrt())).abs() < 1e-12);
        assert!(rows[1].alpha0 < rows[1].trivial);
        let csv = sweep_csv(&rows);
        assert!(csv.starts_with(SWEEP_HEADER));
        assert_eq!(csv.lines().count(), 7);
    }
}
