//! `coopcolor` command-line tool.
//!
//! Exit codes: 0 success (including `Unknown` outcomes), 1 usage error,
//! 2 contract violation, 3 internal error.

mod bench;
mod commands;
mod config;

use std::fs::OpenOptions;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::Value;

use config::Config;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Contract(String),
    Internal(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Contract(_) => 2,
            CliError::Internal(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Contract(m) | CliError::Internal(m) => m,
        }
    }
}

impl From<coopcolor::Error> for CliError {
    fn from(e: coopcolor::Error) -> Self {
        CliError::Contract(e.to_string())
    }
}

#[derive(Parser, Debug)]
#[command(name = "coopcolor", version, about = "Cooperative colorings of graph families")]
pub struct Cli {
    /// TOML file with defaults; flags take precedence.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Append one JSON run record per invocation to this file.
    #[arg(long, global = true)]
    run_log: Option<PathBuf>,
    /// Require an explicit seed for randomized commands.
    #[arg(long, global = true)]
    ci: bool,
    /// Worker threads for parallel commands.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build the recursive edge-colored construction for level t.
    GenConstruction(GenConstructionArgs),
    /// Sample a random family.
    GenRandom(GenRandomArgs),
    /// Search for a cooperative coloring.
    Solve(SolveArgs),
    /// Check a coloring against an instance.
    Verify(VerifyArgs),
    /// Exhaustive search for a non-colorability certificate.
    CertifyUnsat(CertifyArgs),
    /// Split every member of an instance.
    Decompose(DecomposeArgs),
    /// Graphviz rendering of an instance.
    ExportDot(ExportDotArgs),
    /// Run a benchmark suite.
    Bench(BenchArgs),
}

#[derive(Args, Debug)]
pub struct GenConstructionArgs {
    #[arg(long)]
    pub t: usize,
    /// Also write the extracted star-forest family.
    #[arg(long)]
    pub family: bool,
    /// Also write a DOT rendering.
    #[arg(long)]
    pub dot: bool,
    /// Report sizes from the recurrence without building the graph.
    #[arg(long)]
    pub stats_only: bool,
    /// Emit the lower bound this level witnesses.
    #[arg(long)]
    pub witness_claim: bool,
    /// Output directory; the construction is printed to stdout otherwise.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Largest level to materialize.
    #[arg(long)]
    pub cap: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RandomKind {
    Star,
    Gnp,
}

#[derive(Args, Debug)]
pub struct GenRandomArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub k: usize,
    /// Maximum leaves per star.
    #[arg(long)]
    pub d: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, value_enum)]
    pub kind: Option<RandomKind>,
    /// Edge probability for `gnp`.
    #[arg(long)]
    pub p: Option<f64>,
    /// Random memberships for `gnp`.
    #[arg(long)]
    pub list: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SolverKind {
    Greedy,
    Lll,
    StarPartition,
    Partition,
    Exact,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SplitterKind {
    Star,
    Threshold,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SubSolverKind {
    Greedy,
    Lll,
    Exact,
}

#[derive(Args, Debug)]
pub struct SolveArgs {
    #[arg(long)]
    pub instance: PathBuf,
    #[arg(long, value_enum)]
    pub solver: Option<SolverKind>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub epsilon: Option<f64>,
    /// Inventory size for the partition solvers.
    #[arg(long)]
    pub inventory: Option<usize>,
    /// Resample cap (randomized solvers) or node budget (exact).
    #[arg(long)]
    pub cap: Option<u64>,
    #[arg(long, value_enum)]
    pub splitter: Option<SplitterKind>,
    #[arg(long)]
    pub q: Option<usize>,
    #[arg(long)]
    pub h: Option<usize>,
    #[arg(long, value_enum)]
    pub sub_a: Option<SubSolverKind>,
    #[arg(long, value_enum)]
    pub sub_b: Option<SubSolverKind>,
    /// Write the witness coloring here.
    #[arg(long)]
    pub witness_out: Option<PathBuf>,
    /// Print the result as JSON.
    #[arg(long)]
    pub json: bool,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long)]
    pub instance: PathBuf,
    #[arg(long)]
    pub coloring: PathBuf,
}

#[derive(Args, Debug)]
pub struct CertifyArgs {
    #[arg(long)]
    pub instance: PathBuf,
    #[arg(long)]
    pub budget_nodes: Option<u64>,
    #[arg(long)]
    pub budget_seconds: Option<f64>,
    /// Independent search orders run in parallel.
    #[arg(long)]
    pub portfolio: Option<usize>,
    /// Seeds the portfolio's search orders.
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Star,
    Threshold,
    Quotient,
}

#[derive(Args, Debug)]
pub struct DecomposeArgs {
    #[arg(long)]
    pub instance: PathBuf,
    #[arg(long, value_enum)]
    pub method: Method,
    #[arg(long)]
    pub q: Option<usize>,
    /// Tree height (threshold) or treedepth cap (quotient).
    #[arg(long)]
    pub h: Option<usize>,
    /// JSON array of label arrays (quotient).
    #[arg(long)]
    pub parts: Option<PathBuf>,
    /// Check the tree-freeness consequence of the threshold split.
    #[arg(long)]
    pub audit_tree_free: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct ExportDotArgs {
    #[arg(long)]
    pub instance: PathBuf,
    #[arg(long)]
    pub coloring: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct BenchArgs {
    #[arg(long)]
    pub suite: String,
    /// `a..b` or a comma-separated list.
    #[arg(long)]
    pub seeds: Option<String>,
    /// Writes `<output>.csv`, `<output>.json` and `<output>.timing.json`;
    /// the CSV goes to stdout otherwise.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Vertices per instance.
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub cap: Option<u64>,
}

/// What a subcommand reports into its run record.
#[derive(Debug, Default)]
pub struct Report {
    pub config: serde_json::Map<String, Value>,
    pub seed: Option<u64>,
    pub outcome: Value,
    pub artifacts: Vec<String>,
}

pub struct Context {
    pub config: Config,
    pub ci: bool,
    pub jobs: Option<usize>,
}

impl Context {
    /// Resolves a seed; mandatory in CI mode.
    pub fn seed(&self, section: &str, flag: Option<u64>) -> Result<u64, CliError> {
        match self.config.pick_opt(section, "seed", flag)? {
            Some(seed) => Ok(seed),
            None if self.ci => Err(CliError::Usage(format!("{section}: --seed is required with --ci"))),
            None => Ok(0),
        }
    }

    pub fn jobs(&self, section: &str) -> Result<Option<usize>, CliError> {
        self.config.pick_opt(section, "jobs", self.jobs)
    }
}

#[derive(Serialize)]
struct RunRecord<'a> {
    command: &'a [String],
    config: &'a serde_json::Map<String, Value>,
    seed: Option<u64>,
    outcome: &'a Value,
    artifacts: &'a [String],
    exit_code: u8,
    wall_time_secs: f64,
}

fn run(cli: Cli) -> Result<Report, CliError> {
    let config = match &cli.config {
        Some(path) => Config::load(path)?,
        None => Config::default(),
    };
    let ctx = Context { config, ci: cli.ci, jobs: cli.jobs };
    match cli.command {
        Command::GenConstruction(a) => commands::gen_construction(&ctx, a),
        Command::GenRandom(a) => commands::gen_random(&ctx, a),
        Command::Solve(a) => commands::solve(&ctx, a),
        Command::Verify(a) => commands::verify(&ctx, a),
        Command::CertifyUnsat(a) => commands::certify_unsat(&ctx, a),
        Command::Decompose(a) => commands::decompose(&ctx, a),
        Command::ExportDot(a) => commands::export_dot(&ctx, a),
        Command::Bench(a) => bench::run(&ctx, a),
    }
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let run_log = cli.run_log.clone();
    let start = Instant::now();
    let result = run(cli);
    let wall_time_secs = start.elapsed().as_secs_f64();
    let (report, code) = match result {
        Ok(report) => (report, 0),
        Err(e) => {
            eprintln!("error: {}", e.message());
            let outcome = serde_json::json!({ "error": e.message() });
            (Report { outcome, ..Report::default() }, e.code())
        }
    };
    let record = RunRecord {
        command: &argv[1..],
        config: &report.config,
        seed: report.seed,
        outcome: &report.outcome,
        artifacts: &report.artifacts,
        exit_code: code,
        wall_time_secs,
    };
    let line = serde_json::to_string(&record).expect("run record serializes");
    let logged = match &run_log {
        Some(path) => OpenOptions::new()
            .create(true)
            .append(true)
            .open(path)
            .and_then(|mut f| writeln!(f, "{line}")),
        None => writeln!(std::io::stderr(), "{line}"),
    };
    if let Err(e) = logged {
        eprintln!("error: cannot write run record: {e}");
        return ExitCode::from(3);
    }
    ExitCode::from(code)
}
