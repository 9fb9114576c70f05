//! Command-line front end for `roving-core`: exact coverage distributions,
//! agent-count planning, seeded simulation and cross-verification.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::num::NonZeroUsize;
use std::path::PathBuf;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use roving_core::plan::{min_agents, PlanQuery, DEFAULT_K_MAX};
use roving_core::{coverage_distribution, ExactProbability, Params, Scheme};

pub mod output;
pub mod parallel;
pub mod verify;

use output::{write_json, DistRecord, Format, PlanRecord, SimRecord};

/// Seed used by `simulate` and `verify` when `--seed` is not given.
pub const DEFAULT_SEED: u64 = 0x5eed;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VERIFY_FAILED: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "roving", version, about = "Coverage analysis for randomly roving monitoring agents")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact distribution of the number of distinct covered nodes.
    Dist(DistArgs),
    /// Fewest agents reaching at least t distinct nodes with a given confidence.
    Plan(PlanArgs),
    /// Monte Carlo estimate of the coverage distribution.
    Simulate(SimulateArgs),
    /// Cross-check independent evaluation routes against each other.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    /// Significant digits of the rounded decimal renderings.
    #[arg(long, default_value_t = 15, value_parser = clap::value_parser!(u32).range(1..=1000))]
    pub digits: u32,
    /// Output file; standard output when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SchemeArgs {
    #[arg(long, default_value = "abide", value_parser = parse_scheme)]
    pub scheme: Scheme,
    /// Number of nodes in the network.
    #[arg(long)]
    pub n: u64,
    /// Memory size of each agent.
    #[arg(long)]
    pub m: u64,
}

#[derive(Debug, Args)]
pub struct DistArgs {
    #[command(flatten)]
    pub model: SchemeArgs,
    /// Number of agents.
    #[arg(long)]
    pub k: u64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct PlanArgs {
    #[command(flatten)]
    pub model: SchemeArgs,
    /// Required number of distinct nodes.
    #[arg(long)]
    pub t: u64,
    /// Required probability, as a fraction ("95/100") or decimal ("0.95").
    #[arg(long, value_parser = parse_probability)]
    pub confidence: ExactProbability,
    #[arg(long, default_value_t = DEFAULT_K_MAX)]
    pub k_max: u64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeedArg {
    Fixed(u64),
    Random,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub model: SchemeArgs,
    #[arg(long)]
    pub k: u64,
    #[arg(long, default_value_t = 100_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub trials: u64,
    /// Integer seed, or "random" to draw one from the OS.
    #[arg(long, value_parser = parse_seed)]
    pub seed: Option<SeedArg>,
    /// Also emit the exact law and the total variation distance to it.
    #[arg(long)]
    pub compare: bool,
    /// Worker threads; results are identical for every value.
    #[arg(long)]
    pub workers: Option<NonZeroUsize>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Run only the nested-sum check (combinable with --exact / --simulation).
    #[arg(long)]
    pub legacy: bool,
    /// Run only the exact cross-checks.
    #[arg(long)]
    pub exact: bool,
    /// Run only the simulation check.
    #[arg(long)]
    pub simulation: bool,
    /// Agent count for the nested-sum check (at least 4).
    #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u64).range(4..=12))]
    pub k: u64,
    /// Largest network size for the nested-sum check.
    #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u64).range(1..=16))]
    pub n_max: u64,
    /// Largest memory size for the nested-sum check.
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u64).range(1..=4))]
    pub m_max: u64,
    #[arg(long, default_value_t = roving_core::legacy::DEFAULT_TERM_BUDGET)]
    pub term_budget: u64,
    #[arg(long, default_value_t = 100_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub trials: u64,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long)]
    pub workers: Option<NonZeroUsize>,
    #[arg(long, hide = true)]
    pub inject_fault: bool,
}

fn parse_scheme(s: &str) -> Result<Scheme, String> {
    s.parse().map_err(|e: roving_core::params::UnknownScheme| e.to_string())
}

fn parse_probability(s: &str) -> Result<ExactProbability, String> {
    s.parse().map_err(|e: roving_core::probability::ParseRationalError| e.to_string())
}

fn parse_seed(s: &str) -> Result<SeedArg, String> {
    if s.eq_ignore_ascii_case("random") {
        return Ok(SeedArg::Random);
    }
    s.parse()
        .map(SeedArg::Fixed)
        .map_err(|_| format!("seed must be an unsigned 64-bit integer or \"random\", got {s:?}"))
}

/// Error whose message is a user-facing diagnostic and maps to [`EXIT_USAGE`].
#[derive(Debug)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn usage(e: impl std::fmt::Display) -> anyhow::Error {
    UsageError(e.to_string()).into()
}

fn open_sink(path: &Option<PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => {
            let file = File::create(p).with_context(|| format!("cannot create {}", p.display()))?;
            Box::new(BufWriter::new(file))
        }
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

/// Runs one parsed invocation and returns its exit code.
pub fn run(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Dist(args) => cmd_dist(args),
        Command::Plan(args) => cmd_plan(args),
        Command::Simulate(args) => cmd_simulate(args),
        Command::Verify(args) => cmd_verify(args),
    }
}

pub fn cmd_dist(args: DistArgs) -> Result<i32> {
    let scheme = args.model.scheme;
    let p = Params::new(scheme, args.model.n, args.model.m, args.k).map_err(usage)?;
    let record = DistRecord::new(&coverage_distribution(&p, scheme), args.output.digits);
    let sink = open_sink(&args.output.out)?;
    match args.output.format {
        Format::Json => write_json(sink, &record)?,
        Format::Csv => record.write_csv(sink)?,
    }
    Ok(EXIT_OK)
}

pub fn cmd_plan(args: PlanArgs) -> Result<i32> {
    let SchemeArgs { scheme, n, m } = args.model;
    let query = PlanQuery::new(scheme, n, m, args.t, args.confidence, args.k_max).map_err(usage)?;
    let outcome = min_agents(&query);
    let record = PlanRecord::new(&query, n, m, &outcome, args.output.digits);
    let sink = open_sink(&args.output.out)?;
    match args.output.format {
        Format::Json => write_json(sink, &record)?,
        Format::Csv => record.write_csv(sink)?,
    }
    Ok(EXIT_OK)
}

pub fn cmd_simulate(args: SimulateArgs) -> Result<i32> {
    let scheme = args.model.scheme;
    let p = Params::new(scheme, args.model.n, args.model.m, args.k).map_err(usage)?;
    let seed = match args.seed {
        Some(SeedArg::Fixed(s)) => s,
        Some(SeedArg::Random) => rand::random(),
        None => DEFAULT_SEED,
    };
    let workers = args.workers.unwrap_or_else(parallel::default_workers);
    let sim = parallel::run_simulation(&p, scheme, args.trials, seed, workers);
    let exact = args.compare.then(|| coverage_distribution(&p, scheme));
    let record = SimRecord::new(&sim, exact.as_ref(), args.output.digits)?;
    let sink = open_sink(&args.output.out)?;
    match args.output.format {
        Format::Json => write_json(sink, &record)?,
        Format::Csv => record.write_csv(sink)?,
    }
    Ok(EXIT_OK)
}

pub fn cmd_verify(args: VerifyArgs) -> Result<i32> {
    let any_selected = args.legacy || args.exact || args.simulation;
    let config = verify::VerifyConfig {
        exact: args.exact || !any_selected,
        legacy: args.legacy || !any_selected,
        simulation: args.simulation || !any_selected,
        legacy_agents: args.k,
        legacy_n_max: args.n_max,
        legacy_m_max: args.m_max,
        term_budget: args.term_budget,
        trials: args.trials,
        seed: args.seed,
        workers: args.workers.unwrap_or_else(parallel::default_workers),
        inject_fault: args.inject_fault,
    };
    let reports = verify::run(&config);
    let mut out = io::stdout().lock();
    for report in &reports {
        writeln!(out, "{report}")?;
    }
    let failed = reports.iter().filter(|r| !r.passed()).count();
    if failed == 0 {
        writeln!(out, "all {} checks passed", reports.len())?;
        Ok(EXIT_OK)
    } else {
        writeln!(out, "{failed} of {} checks failed", reports.len())?;
        Ok(EXIT_VERIFY_FAILED)
    }
}
