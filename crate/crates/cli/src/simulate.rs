use std::path::PathBuf;

use clap::Subcommand;
use cqlab_core::simulator::{
    amplify, budget_for, greedy_clique, new_instance, run_l_adaptive, BaseStrategy, RoundGreedy, RunOptions,
};
use cqlab_core::Ell;

use crate::{json, CmdResult, Failure, Format};

#[derive(Debug, Subcommand)]
pub enum Cmd {
    /// Greedy clique search on a seeded G(n, 1/2) under the budget n^delta.
    Greedy {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        delta: f64,
        /// Rounds of adaptivity; `inf` answers every query at once.
        #[arg(long, default_value = "inf")]
        ell: Ell,
        #[arg(long)]
        seed: u64,
        /// Best of independent runs on log2(n) vertex blocks.
        #[arg(long, conflicts_with = "transcript")]
        amplify: bool,
        /// Verification queries do not count against the budget.
        #[arg(long)]
        no_count_verification: bool,
        /// Write the query transcript (`round,u,v,bit`, 0-based) here.
        #[arg(long)]
        transcript: Option<PathBuf>,
    },
}

const CSV_HEADER: &str =
    "n,delta,ell,seed,size,is_clique,queries_used,verification_queries,rounds_used,budget,within_budget";

pub fn run(cmd: Cmd, output: Option<Format>) -> CmdResult {
    let fmt = output.unwrap_or(Format::Plain);
    let Cmd::Greedy {
        n,
        delta,
        ell,
        seed,
        amplify: amp,
        no_count_verification,
        transcript,
    } = cmd;
    let opts = RunOptions {
        count_verification: !no_count_verification,
    };
    let rounds = ell.finite().map(|l| l as usize);
    if amp {
        let base = if rounds.is_some() {
            BaseStrategy::RoundGreedy
        } else {
            BaseStrategy::Greedy
        };
        let res = amplify(base, n, seed, delta, rounds.unwrap_or(0), opts)?;
        return match fmt {
            Format::Plain => Ok(format!("{}\n", res.best.vertices.len())),
            Format::Csv => Ok(csv_line(n, delta, ell, seed, &res.best)),
            Format::Json => json(&res),
        };
    }
    let mut g = new_instance(n, seed)?;
    let res = match rounds {
        None => {
            if !(0.0..=2.0).contains(&delta) {
                return Err(Failure(format!("delta must lie in [0, 2] (got {delta})")));
            }
            greedy_clique(&mut g, budget_for(n, delta), opts)?
        }
        Some(l) => run_l_adaptive(&mut g, &mut RoundGreedy::new(opts), delta, l, opts)?,
    };
    if let Some(path) = transcript {
        std::fs::write(&path, g.transcript()).map_err(|e| Failure(format!("{}: {e}", path.display())))?;
    }
    match fmt {
        Format::Plain => Ok(format!("{}\n", res.vertices.len())),
        Format::Csv => Ok(csv_line(n, delta, ell, seed, &res)),
        Format::Json => json(&res),
    }
}

fn csv_line(n: usize, delta: f64, ell: Ell, seed: u64, r: &cqlab_core::simulator::RunResult) -> String {
    format!(
        "{CSV_HEADER}\n{n},{delta},{ell},{seed},{},{},{},{},{},{},{}\n",
        r.vertices.len(),
        r.is_clique,
        r.queries_used,
        r.verification_queries,
        r.rounds_used,
        r.budget,
        r.within_budget
    )
}
