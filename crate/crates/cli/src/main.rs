//! `cqlab`: bounds, critical-edge oracles, red/blue constructions and the
//! query simulator from the command line.

mod beta;
mod bounds;
mod gamma;
mod simulate;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Plain,
}

#[derive(Debug, Parser)]
#[command(
    name = "cqlab",
    version,
    about = "Clique and dense-subgraph query bounds, critical edges and alternating structures"
)]
struct Cli {
    /// Output format; each command has its own default.
    #[arg(long, global = true, value_enum)]
    output: Option<Format>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Clique and dense-subgraph bounds.
    #[command(subcommand)]
    Bounds(bounds::Cmd),
    /// Critical-edge ratios and the gamma bounds.
    #[command(subcommand)]
    Gamma(gamma::Cmd),
    /// Red/blue graphs without long alternating paths.
    #[command(subcommand)]
    Beta(beta::Cmd),
    /// Query simulations on G(n, 1/2).
    #[command(subcommand)]
    Simulate(simulate::Cmd),
}

/// A failure inside a command, reported with exit code 1.
#[derive(Debug)]
pub struct Failure(pub String);

impl<E: std::error::Error> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

pub type CmdResult = Result<String, Failure>;

pub fn json<T: serde::Serialize>(v: &T) -> CmdResult {
    let mut s = serde_json::to_string_pretty(v).map_err(|e| Failure(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = match cli.command {
        Command::Bounds(c) => bounds::run(c, cli.output),
        Command::Gamma(c) => gamma::run(c, cli.output),
        Command::Beta(c) => beta::run(c, cli.output),
        Command::Simulate(c) => simulate::run(c, cli.output),
    };
    match out {
        Ok(s) => {
            print!("{s}");
            ExitCode::SUCCESS
        }
        Err(Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
