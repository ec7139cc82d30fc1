use clap::{ArgGroup, Subcommand};
use cqlab_core::labeled_graphs::{
    count_critical, cross_class_critical_pairs, make_construction, min_critical_matching_bruteforce,
    switch_local_search, ConstructionKind,
};
use cqlab_core::partition_bounds::{c_vector, epsilon_check, gamma_upper_bound};
use cqlab_core::{BigRational, Ell, DEFAULT_BRUTE_CAP};
use num_bigint::BigInt;
use serde_json::json;

use crate::{json, CmdResult, Failure, Format};

#[derive(Debug, Subcommand)]
pub enum Cmd {
    /// Minimum critical-edge ratio of a perfect matching on a construction.
    #[command(group(ArgGroup::new("method").args(["brute_force", "local_search"])))]
    Verify {
        #[arg(long)]
        construction: ConstructionKind,
        #[arg(long)]
        n: usize,
        /// Exhaustive minimum (default).
        #[arg(long)]
        brute_force: bool,
        /// Switch local search instead.
        #[arg(long)]
        local_search: bool,
        /// Weight base, as `p/q` or a decimal; defaults to `2^-ell`.
        #[arg(long, requires = "local_search", value_parser = parse_rational)]
        epsilon: Option<BigRational>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Proven upper bound on gamma(ell).
    Upper {
        #[arg(long)]
        ell: Ell,
    },
    /// Per-label caps and their sum.
    Cvector {
        #[arg(long)]
        ell: u32,
    },
    /// Whether epsilon satisfies the weight-ordering condition for ell labels.
    Epscheck {
        #[arg(long)]
        ell: u32,
        #[arg(long, value_parser = parse_rational)]
        epsilon: BigRational,
    },
}

/// Parses `p/q`, an integer or a finite decimal such as `0.125`.
pub fn parse_rational(s: &str) -> Result<BigRational, String> {
    let t = s.trim();
    if let Ok(r) = t.parse::<BigRational>() {
        return Ok(r);
    }
    let bad = || format!("invalid rational `{s}` (expected p/q or a decimal)");
    let (neg, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, t),
    };
    let (int, frac) = body.split_once('.').ok_or_else(bad)?;
    if int.is_empty() && frac.is_empty() || !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits: BigInt = format!("{int}{frac}").parse().map_err(|_| bad())?;
    let r = BigRational::new(digits, num_traits::pow(BigInt::from(10), frac.len()));
    Ok(if neg { -r } else { r })
}

pub fn brute_cap() -> Result<usize, Failure> {
    match std::env::var("CQLAB_BRUTE_CAP") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Failure(format!("CQLAB_BRUTE_CAP: invalid value `{v}`"))),
        Err(_) => Ok(DEFAULT_BRUTE_CAP),
    }
}

pub fn run(cmd: Cmd, output: Option<Format>) -> CmdResult {
    let fmt = output.unwrap_or(Format::Plain);
    match cmd {
        Cmd::Verify {
            construction,
            n,
            local_search,
            epsilon,
            seed,
            ..
        } => {
            let labeling = make_construction(construction, n)?;
            let size = n / 2;
            let target = construction.asymptotic_min_ratio();
            if local_search {
                let out = switch_local_search(&labeling, size, epsilon.as_ref(), seed)?;
                let report = count_critical(&labeling, &out.matching)?;
                let cross = cross_class_critical_pairs(&labeling, &out.matching)?;
                match fmt {
                    Format::Plain => Ok(format!("{}\n", report.ratio)),
                    Format::Csv => Ok(format!(
                        "construction,n,method,critical,denominator,ratio,outward,cross_class_pairs\n{},{n},local_search,{},{},{},{},{}\n",
                        construction.name(),
                        report.critical_count,
                        report.denominator,
                        report.ratio,
                        report.outward_count,
                        cross.len()
                    )),
                    Format::Json => json(&json!({
                        "construction": construction,
                        "n": n,
                        "method": "local_search",
                        "seed": seed,
                        "epsilon": out.epsilon.to_string(),
                        "matching": out.matching.one_based(),
                        "report": report,
                        "cross_class_pairs": cross.len(),
                        "moves": { "exchanges": out.exchanges, "e_switches": out.e_switches, "cycle_switches": out.cycle_switches },
                        "asymptotic_ratio": target.to_string(),
                    })),
                }
            } else {
                let (m, report) = min_critical_matching_bruteforce(&labeling, size, brute_cap()?)?;
                match fmt {
                    Format::Plain => Ok(format!("{}\n", report.ratio)),
                    Format::Csv => Ok(format!(
                        "construction,n,method,critical,denominator,ratio,outward,cross_class_pairs\n{},{n},brute_force,{},{},{},{},\n",
                        construction.name(),
                        report.critical_count,
                        report.denominator,
                        report.ratio,
                        report.outward_count
                    )),
                    Format::Json => json(&json!({
                        "construction": construction,
                        "n": n,
                        "method": "brute_force",
                        "matching": m.one_based(),
                        "report": report,
                        "asymptotic_ratio": target.to_string(),
                    })),
                }
            }
        }
        Cmd::Upper { ell } => {
            let g = gamma_upper_bound(ell)?;
            match fmt {
                Format::Plain => Ok(format!("{g}\n")),
                Format::Csv => Ok(format!("ell,gamma_upper\n{ell},{g}\n")),
                Format::Json => json(
                    &json!({ "ell": ell, "gamma_upper": g.to_string(), "value": *g.numer() as f64 / *g.denom() as f64 }),
                ),
            }
        }
        Cmd::Cvector { ell } => {
            let c = c_vector(ell)?;
            let joined = c.entries.iter().map(u64::to_string).collect::<Vec<_>>();
            match fmt {
                Format::Plain => Ok(format!("({})\n", joined.join(", "))),
                Format::Csv => Ok(format!(
                    "ell,entries,s_value\n{ell},{},{}\n",
                    joined.join(" "),
                    c.s_value
                )),
                Format::Json => json(&c),
            }
        }
        Cmd::Epscheck { ell, epsilon } => {
            if ell < 2 {
                return Err(Failure(format!("ell must be at least 2 (got {ell})")));
            }
            let ok = epsilon_check(ell, &epsilon);
            match fmt {
                Format::Plain => Ok(format!("{ok}\n")),
                Format::Csv => Ok(format!("ell,epsilon,ok\n{ell},{epsilon},{ok}\n")),
                Format::Json => json(&json!({ "ell": ell, "epsilon": epsilon.to_string(), "ok": ok })),
            }
        }
    }
}
