mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::config::{RunConfig, StrategyName};

#[derive(Parser)]
#[command(
    name = "laumon",
    version,
    about = "Fixed-point bases of Laumon spaces: listings, matrices and relation checks"
)]
struct Cli {
    /// JSON run configuration; flags override its fields.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the fixed points of one degree.
    Patterns(PatternsArgs),
    /// Run relation suites and write JSON reports.
    Verify(VerifyArgs),
    /// Character and closure checks for an integrable module.
    Specialize(SpecializeArgs),
    /// Operator dumps.
    #[command(subcommand)]
    Op(OpCommand),
}

#[derive(Args)]
struct PatternsArgs {
    #[arg(long, conflicts_with = "affine")]
    finite: bool,
    #[arg(long)]
    affine: bool,
    #[arg(short)]
    n: Option<usize>,
    /// Degree vector, comma separated; affine vectors start at `d_0`.
    #[arg(short, value_delimiter = ',', conflicts_with = "total")]
    d: Option<Vec<u32>>,
    /// All degree vectors with this total.
    #[arg(long)]
    total: Option<u32>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    /// Loop algebra relations on the finite module.
    Loop,
    /// Toroidal relations on the affine module.
    Toroidal,
    /// Localization against the closed affine formulas.
    Oracle,
    /// Zero modes against the quantum gl_n relations.
    Gl,
    /// Deliberately broken relations, all of which must fail.
    Controls,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_enum)]
    suite: Suite,
    #[arg(short)]
    n: Option<usize>,
    /// Bound on the total degree of source vectors.
    #[arg(short = 'D', long = "max-total")]
    max_total: Option<u32>,
    /// Modes run over [-R, R].
    #[arg(short = 'R', long = "window")]
    window: Option<i32>,
    #[arg(long, value_enum)]
    strategy: Option<StrategyName>,
    #[arg(long)]
    seed: Option<u64>,
    /// Evaluation points per entry for the random strategy.
    #[arg(long)]
    trials: Option<usize>,
    /// Where to write the JSON reports.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SpecializeArgs {
    #[arg(short)]
    n: Option<usize>,
    /// Level.
    #[arg(short = 'K', long = "level")]
    level: Option<i64>,
    /// Finite part of the weight, comma separated, non-increasing.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    mu: Option<Vec<i64>>,
    #[arg(long = "max-degree")]
    max_degree: Option<u32>,
    /// Exponent of `u` in the substitution, in place of the correct one.
    #[arg(long = "u-exponent", allow_hyphen_values = true)]
    u_exponent: Option<i64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum OpCommand {
    /// Full matrix of one generator out of a degree block.
    Matrix(MatrixArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OpKind {
    E,
    F,
    PsiPlus,
    PsiMinus,
    /// Cartan generator of the finite module.
    T,
    EHat0,
    FHat0,
    PsiHat0Plus,
    PsiHat0Minus,
    ChevalleyK,
    ChevalleyE,
    ChevalleyF,
}

#[derive(Args)]
struct MatrixArgs {
    #[arg(long)]
    affine: bool,
    #[arg(short)]
    n: usize,
    #[arg(long, value_enum)]
    kind: OpKind,
    #[arg(long)]
    node: i64,
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    mode: i32,
    /// Degree vector of the source block, `(d_1, …)` finite or `(d_0, …, d_{n-1})` affine.
    #[arg(long, value_delimiter = ',')]
    from: Vec<u32>,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Flags first, then the file.
fn overlay(flags: RunConfig, file: RunConfig) -> RunConfig {
    RunConfig {
        n: flags.n.or(file.n),
        max_total: flags.max_total.or(file.max_total),
        window: flags.window.or(file.window),
        strategy: flags.strategy.or(file.strategy),
        seed: flags.seed.or(file.seed),
        trials: flags.trials.or(file.trials),
        output: flags.output.or(file.output),
        level: flags.level.or(file.level),
        mu: flags.mu.or(file.mu),
    }
}

fn workers() -> Result<()> {
    if let Ok(k) = std::env::var("LAUMON_WORKERS") {
        let k: usize = k
            .parse()
            .map_err(|_| anyhow::anyhow!("LAUMON_WORKERS must be a number, got {k:?}"))?;
        rayon::ThreadPoolBuilder::new().num_threads(k).build_global()?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<bool> {
    workers()?;
    let file = RunConfig::load_opt(cli.config.as_deref())?;
    match cli.command {
        Command::Patterns(a) => {
            let cfg = overlay(
                RunConfig {
                    n: a.n,
                    output: a.out,
                    ..RunConfig::default()
                },
                file,
            );
            commands::patterns(&cfg, a.affine, a.d, a.total)
        }
        Command::Verify(a) => {
            let cfg = overlay(
                RunConfig {
                    n: a.n,
                    max_total: a.max_total,
                    window: a.window,
                    strategy: a.strategy,
                    seed: a.seed,
                    trials: a.trials,
                    output: a.out,
                    ..RunConfig::default()
                },
                file,
            );
            commands::verify(&cfg, a.suite)
        }
        Command::Specialize(a) => {
            let cfg = overlay(
                RunConfig {
                    n: a.n,
                    max_total: a.max_degree,
                    level: a.level,
                    mu: a.mu,
                    output: a.out,
                    ..RunConfig::default()
                },
                file,
            );
            commands::specialize(&cfg, a.u_exponent)
        }
        Command::Op(OpCommand::Matrix(a)) => {
            let spec = commands::MatrixSpec {
                affine: a.affine,
                n: a.n,
                kind: a.kind,
                node: a.node,
                mode: a.mode,
                from: a.from,
            };
            commands::matrix(&spec, a.out.as_deref().or(file.output.as_deref()))
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
