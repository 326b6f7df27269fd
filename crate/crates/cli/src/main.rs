use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use octic_pib::driver::{self, default_digits, OutputFormat, RunConfig, RunReport, DIGITS_ENV};

#[derive(Parser)]
#[command(name = "octic-pib", version, about = "Power integral bases of x^8 + a x^6 + b x^4 + a x^2 + 1")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve every (a, b) in a range.
    Sweep {
        #[arg(long, default_value = "-25..25", allow_hyphen_values = true, value_parser = parse_range)]
        a_range: (i64, i64),
        #[arg(long, default_value = "2..25", allow_hyphen_values = true, value_parser = parse_range)]
        b_range: (i64, i64),
        #[command(flatten)]
        common: Common,
    },
    /// Solve one instance.
    Solve {
        #[arg(long, allow_hyphen_values = true)]
        a: i64,
        #[arg(long, allow_hyphen_values = true)]
        b: i64,
        #[command(flatten)]
        common: Common,
    },
    /// Compare the solver against brute-force search in a box.
    Verify {
        #[arg(long, allow_hyphen_values = true)]
        a: i64,
        #[arg(long, allow_hyphen_values = true)]
        b: i64,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(Args)]
struct Common {
    /// Coefficients are bounded by 10^EXP.
    #[arg(long, default_value_t = 200)]
    bound_exp: u32,
    /// Working precision in decimal digits.
    #[arg(long, env = DIGITS_ENV)]
    digits: Option<u32>,
    /// Worker threads (0 = all CPUs).
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Oracle box radius; for `verify` it defaults to 2.
    #[arg(long)]
    oracle_radius: Option<u32>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Report 0 ms per instance so output is reproducible.
    #[arg(long)]
    no_timings: bool,
}

fn parse_range(s: &str) -> std::result::Result<(i64, i64), String> {
    let (lo, hi) = s
        .split_once("..")
        .or_else(|| s.split_once(':'))
        .ok_or_else(|| format!("expected MIN..MAX, got {s:?}"))?;
    let lo: i64 = lo.trim().parse().map_err(|e| format!("{lo:?}: {e}"))?;
    let hi: i64 = hi.trim().parse().map_err(|e| format!("{hi:?}: {e}"))?;
    if lo > hi {
        return Err(format!("empty range {lo}..{hi}"));
    }
    Ok((lo, hi))
}

fn config(common: &Common, a: (i64, i64), b: (i64, i64)) -> Result<RunConfig> {
    let cfg = RunConfig {
        a_min: a.0,
        a_max: a.1,
        b_min: b.0,
        b_max: b.1,
        coeff_bound_exponent: common.bound_exp,
        digits: common.digits.unwrap_or_else(default_digits),
        jobs: common.jobs,
        output_format: match common.format {
            Format::Table => OutputFormat::Table,
            Format::Json => OutputFormat::Json,
        },
        oracle_radius: common.oracle_radius,
        timings: !common.no_timings,
    };
    cfg.validate()?;
    Ok(cfg)
}

fn emit(common: &Common, text: &str) -> Result<()> {
    match &common.out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            let mut out = std::io::stdout().lock();
            let nl = if text.ends_with('\n') { "" } else { "\n" };
            match write!(out, "{text}{nl}").and_then(|_| out.flush()) {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.into()),
                _ => Ok(()),
            }
        }
    }
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Sweep { a_range, b_range, common } => {
            let cfg = config(&common, a_range, b_range)?;
            let report = driver::sweep(&cfg)?;
            emit(&common, &report.render(cfg.output_format))?;
            Ok(report.all_passed())
        }
        Command::Solve { a, b, common } => {
            let cfg = config(&common, (a, a), (b, b))?;
            let report = RunReport {
                instances: vec![driver::solve_one(a, b, &cfg)],
            };
            emit(&common, &report.render(cfg.output_format))?;
            Ok(report.all_passed())
        }
        Command::Verify { a, b, common } => {
            let cfg = config(&common, (a, a), (b, b))?;
            let radius = cfg.oracle_radius.unwrap_or(2);
            let rep = driver::verify(a, b, radius, &cfg)?;
            let text = match cfg.output_format {
                OutputFormat::Json => serde_json::to_string_pretty(&rep)?,
                OutputFormat::Table => {
                    let mut s = format!(
                        "({a},{b}) radius {radius}: {} Thue solutions, {} generators from brute force\n",
                        rep.thue_oracle_count, rep.generator_oracle_count
                    );
                    for (label, n) in [
                        ("Thue solutions missed by solver", rep.thue_missing.len()),
                        ("Thue solutions missed by oracle", rep.thue_extra.len()),
                        ("generators missed by solver", rep.generators_missing.len()),
                        ("generators missed by oracle", rep.generators_extra.len()),
                    ] {
                        s.push_str(&format!("{label}: {n}\n"));
                    }
                    s.push_str(if rep.pass { "agree\n" } else { "DISAGREE\n" });
                    s
                }
            };
            emit(&common, &text)?;
            Ok(rep.pass)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
