use std::path::PathBuf;

use clap::Subcommand;
use cqlab_core::alternating::{
    beta_bruteforce, build_even_k, build_odd_k, construction_blocks, has_alternating_cycle,
    max_blue_in_alternating_path, RedBlueGraph, DEFAULT_BETA_PAIR_CAP,
};
use serde_json::json;

use crate::{json, CmdResult, Failure, Format};

#[derive(Debug, Subcommand)]
pub enum Cmd {
    /// Red/blue construction on x red edges, written as text.
    Build {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        x: usize,
        /// Write the graph here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Checks a red/blue graph file: no alternating cycle and no alternating
    /// path with k or more blue edges.
    Check {
        file: PathBuf,
        #[arg(long)]
        k: usize,
    },
    /// Exact beta_k(x) by exhaustive search.
    Brute {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        x: usize,
    },
}

fn pair_cap() -> Result<usize, Failure> {
    match std::env::var("CQLAB_BETA_PAIR_CAP") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Failure(format!("CQLAB_BETA_PAIR_CAP: invalid value `{v}`"))),
        Err(_) => Ok(DEFAULT_BETA_PAIR_CAP),
    }
}

pub fn run(cmd: Cmd, output: Option<Format>) -> CmdResult {
    let fmt = output.unwrap_or(Format::Plain);
    match cmd {
        Cmd::Build { k, x, out } => {
            let g = if k % 2 == 0 {
                build_even_k(k, x)?
            } else {
                build_odd_k(k, x)?
            };
            let blocks = construction_blocks(k, x)?;
            let text = g.to_text();
            let Some(path) = out else {
                return Ok(text);
            };
            std::fs::write(&path, &text).map_err(|e| Failure(format!("{}: {e}", path.display())))?;
            match fmt {
                Format::Plain => Ok(format!("{}\n", g.blue_count())),
                Format::Csv => Ok(format!("k,x,blue\n{k},{x},{}\n", g.blue_count())),
                Format::Json => json(&json!({
                    "k": k,
                    "x": x,
                    "blocks": blocks,
                    "blue": g.blue_count(),
                    "out": path.display().to_string(),
                })),
            }
        }
        Cmd::Check { file, k } => {
            let text = std::fs::read_to_string(&file).map_err(|e| Failure(format!("{}: {e}", file.display())))?;
            let g = RedBlueGraph::from_text(&text)?;
            if has_alternating_cycle(&g) {
                return Err(Failure(format!("{}: alternating cycle present", file.display())));
            }
            let longest = max_blue_in_alternating_path(&g)?;
            if longest >= k {
                return Err(Failure(format!(
                    "{}: alternating path with {longest} blue edges (at most {} allowed)",
                    file.display(),
                    k.saturating_sub(1)
                )));
            }
            match fmt {
                Format::Plain => Ok(format!("{}\n", g.blue_count())),
                Format::Csv => Ok(format!(
                    "x,blue,max_path\n{},{},{longest}\n",
                    g.num_red(),
                    g.blue_count()
                )),
                Format::Json => json(&json!({
                    "x": g.num_red(),
                    "k": k,
                    "blue": g.blue_count(),
                    "alternating_cycle": false,
                    "max_path_blue": longest,
                })),
            }
        }
        Cmd::Brute { k, x } => {
            let b = beta_bruteforce(k, x, pair_cap()?)?;
            match fmt {
                Format::Plain => Ok(format!("{b}\n")),
                Format::Csv => Ok(format!("k,x,beta\n{k},{x},{b}\n")),
                Format::Json => json(&json!({ "k": k, "x": x, "beta": b })),
            }
        }
    }
}
