use std::fmt::Write as _;

use clap::{Args, Subcommand};
use cqlab_core::bound_calc::{
    clique_alpha_upper, dense_alpha_upper, density_threshold, emit_sweep, fmt_sig, gamma, sweep_csv, table_l2,
    GammaMode, M1Domain,
};
use cqlab_core::Ell;
use serde_json::json;

use crate::{json, CmdResult, Failure, Format};

#[derive(Debug, Args)]
pub struct GammaArg {
    /// Gamma values: exact (ell in {2, 3, inf}) or upper (adds the proven
    /// bound for ell >= 4).
    #[arg(long, default_value = "upper")]
    gamma_mode: GammaMode,
}

#[derive(Debug, Subcommand)]
pub enum Cmd {
    /// Closed-form clique bound.
    Clique {
        #[arg(long)]
        delta: f64,
        #[arg(long)]
        ell: Ell,
        #[command(flatten)]
        g: GammaArg,
    },
    /// Dense-subgraph bound with solver diagnostics.
    Dense {
        #[arg(long)]
        delta: f64,
        #[arg(long)]
        ell: Ell,
        #[arg(long)]
        eta: f64,
        /// Search m1 beyond alpha/2 wherever p > 1/2.
        #[arg(long)]
        extended: bool,
        #[command(flatten)]
        g: GammaArg,
    },
    /// Bound against eta for several ell.
    Sweep {
        #[arg(long)]
        delta: f64,
        #[arg(long, value_delimiter = ',', required = true)]
        ells: Vec<Ell>,
        #[arg(long)]
        eta_from: f64,
        #[arg(long)]
        eta_to: f64,
        #[arg(long)]
        step: f64,
        /// Write here instead of stdout.
        #[arg(long)]
        out: Option<std::path::PathBuf>,
        #[command(flatten)]
        g: GammaArg,
    },
    /// alpha1 and alpha2 for delta = 1, ell = 2, eta = 0.930..0.937.
    TableL2,
    /// Density at which the bound reaches a target size.
    Threshold {
        #[arg(long)]
        delta: f64,
        #[arg(long)]
        ell: Ell,
        #[arg(long)]
        alpha: f64,
        #[command(flatten)]
        g: GammaArg,
    },
}

pub fn run(cmd: Cmd, output: Option<Format>) -> CmdResult {
    match cmd {
        Cmd::Clique { delta, ell, g } => {
            let a = clique_alpha_upper(delta, ell, g.gamma_mode)?;
            let gm = gamma(ell, g.gamma_mode)?;
            match output.unwrap_or(Format::Plain) {
                Format::Plain => Ok(format!("{a:.9}\n")),
                Format::Csv => Ok(format!(
                    "delta,ell,gamma,alpha\n{},{ell},{},{}\n",
                    fmt_sig(delta),
                    fmt_sig(gm),
                    fmt_sig(a)
                )),
                Format::Json => json(&json!({
                    "delta": delta,
                    "ell": ell,
                    "gamma_mode": g.gamma_mode,
                    "gamma": gm,
                    "alpha": a,
                    "branch": if ell == Ell::Finite(2) && delta <= 1.2 { "4delta/3" } else { "sqrt" },
                })),
            }
        }
        Cmd::Dense {
            delta,
            ell,
            eta,
            extended,
            g,
        } => {
            let domain = if extended {
                M1Domain::Extended
            } else {
                M1Domain::HalfAlpha
            };
            let s = dense_alpha_upper(delta, ell, eta, g.gamma_mode, domain)?;
            match output.unwrap_or(Format::Json) {
                Format::Json => json(&s),
                Format::Plain => Ok(format!("{:.9}\n", s.alpha0)),
                Format::Csv => {
                    let f = |v: Option<f64>| fmt_sig(v.unwrap_or(f64::INFINITY));
                    Ok(format!(
                        "delta,ell,eta,trivial,alpha0,alpha1,alpha2,m1,p_at_opt\n{},{ell},{},{},{},{},{},{},{}\n",
                        fmt_sig(delta),
                        fmt_sig(eta),
                        fmt_sig(s.trivial),
                        fmt_sig(s.alpha0),
                        f(s.alpha1),
                        fmt_sig(s.alpha2),
                        f(s.m1),
                        fmt_sig(s.p_at_opt)
                    ))
                }
            }
        }
        Cmd::Sweep {
            delta,
            ells,
            eta_from,
            eta_to,
            step,
            out,
            g,
        } => {
            let rows = emit_sweep(delta, &ells, eta_from, eta_to, step, g.gamma_mode)?;
            let text = match output.unwrap_or(Format::Csv) {
                Format::Json => json(&rows)?,
                _ => sweep_csv(&rows),
            };
            match out {
                Some(path) => {
                    std::fs::write(&path, text).map_err(|e| Failure(format!("{}: {e}", path.display())))?;
                    Ok(String::new())
                }
                None => Ok(text),
            }
        }
        Cmd::TableL2 => {
            let cols = table_l2()?;
            match output.unwrap_or(Format::Plain) {
                Format::Json => json(&cols),
                Format::Csv => {
                    let mut s = String::from("eta,alpha1,alpha2,m1\n");
                    for c in &cols {
                        let _ = writeln!(
                            s,
                            "{:.3},{},{},{}",
                            c.eta,
                            fmt_sig(c.alpha1),
                            fmt_sig(c.alpha2),
                            fmt_sig(c.m1)
                        );
                    }
                    Ok(s)
                }
                Format::Plain => {
                    let mut s = String::new();
                    let row = |name: &str, f: &dyn Fn(&cqlab_core::bound_calc::TableColumn) -> String| {
                        let cells: Vec<String> = cols.iter().map(f).collect();
                        format!("{name:<7}{}\n", cells.join("  "))
                    };
                    s.push_str(&row("eta", &|c| format!("{:<8.3}", c.eta)));
                    s.push_str(&row("alpha1", &|c| format!("{:.6}", c.alpha1)));
                    s.push_str(&row("alpha2", &|c| format!("{:.6}", c.alpha2)));
                    Ok(s)
                }
            }
        }
        Cmd::Threshold { delta, ell, alpha, g } => {
            let eta = density_threshold(delta, ell, alpha, g.gamma_mode)?;
            match output.unwrap_or(Format::Plain) {
                Format::Plain => Ok(format!("{eta:.6}\n")),
                Format::Csv => Ok(format!(
                    "delta,ell,alpha,eta\n{},{ell},{},{}\n",
                    fmt_sig(delta),
                    fmt_sig(alpha),
                    fmt_sig(eta)
                )),
                Format::Json => {
                    json(&json!({ "delta": delta, "ell": ell, "alpha": alpha, "eta": eta, "tolerance": 1e-6 }))
                }
            }
        }
    }
}
