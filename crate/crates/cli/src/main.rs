//! `lrising` — exact quench coherence dynamics of a power-law Ising
//! chain, from the command line.

// negated float comparisons are deliberate NaN guards
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod errors;
mod output;
mod reproduce;
mod run;
mod scenario;
mod svg;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use crate::errors::CliError;
use crate::reproduce::Figure;
use crate::scenario::{HistNormArg, MethodArg, OutputKind, Partial};

#[derive(Parser)]
#[command(
    name = "lrising",
    version,
    about = "Exact quench dynamics of quantum coherence in a power-law Ising chain"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one scenario and write CSVs plus a run manifest.
    Run(ScenarioArgs),
    /// Evaluate one scenario per exponent and tabulate relaxation times.
    ScanAlpha(ScanArgs),
    /// Regenerate a bundled reference figure dataset from scratch.
    Reproduce(ReproduceArgs),
}

#[derive(Args, Debug)]
struct ScenarioArgs {
    /// Scenario file with key=value lines; explicit flags override it.
    #[arg(long)]
    scenario: Option<PathBuf>,
    /// Number of spins in the chain [default: 20].
    #[arg(long)]
    n: Option<usize>,
    /// Base coupling strength J [default: 1].
    #[arg(long)]
    j: Option<f64>,
    /// Power-law exponent alpha [default: 3].
    #[arg(long)]
    alpha: Option<f64>,
    /// Interaction range: 1|2|3|...|exact [default: exact].
    #[arg(long)]
    range: Option<String>,
    /// Target spin, 1-based. Mutually exclusive with --block-*.
    #[arg(long)]
    spin: Option<usize>,
    /// First spin of the target block, 1-based.
    #[arg(long)]
    block_start: Option<usize>,
    /// Number of spins in the target block.
    #[arg(long)]
    block_size: Option<usize>,
    /// End of the time window, in units of 1/J [default: 10].
    #[arg(long)]
    t_max: Option<f64>,
    /// Number of grid points from 0 to t_max inclusive [default: 1000].
    #[arg(long)]
    steps: Option<usize>,
    /// Divide the series by C(0) [default: false].
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    normalize: Option<bool>,
    /// Evaluation method [default: factorized].
    #[arg(long, value_enum)]
    method: Option<MethodArg>,
    /// Comma-separated outputs: series,spectrum,relaxation,steady-state
    /// [default: series].
    #[arg(long, value_enum, value_delimiter = ',')]
    outputs: Option<Vec<OutputKind>>,
    /// Histogram bin count [default: 201].
    #[arg(long)]
    bins: Option<usize>,
    /// Histogram normalization [default: unit-sum].
    #[arg(long, value_enum)]
    hist_norm: Option<HistNormArg>,
    /// Output directory [default: out].
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also render SVG charts.
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    svg: Option<bool>,
}

#[derive(Args, Debug)]
struct ScanArgs {
    /// Comma-separated exponents, e.g. 3,2,1 or 0.1,0.05,0.
    #[arg(long, value_delimiter = ',', required = true)]
    alphas: Vec<f64>,
    #[command(flatten)]
    scenario: ScenarioArgs,
}

#[derive(Args, Debug)]
struct ReproduceArgs {
    /// Which figure dataset to regenerate.
    #[arg(value_enum)]
    figure: Figure,
    /// Output directory [default: out/<figure>].
    #[arg(long)]
    out: Option<PathBuf>,
}

impl ScenarioArgs {
    fn into_partial(self) -> Partial {
        Partial {
            n: self.n,
            j: self.j,
            alpha: self.alpha,
            range: self.range,
            spin: self.spin,
            block_start: self.block_start,
            block_size: self.block_size,
            t_max: self.t_max,
            steps: self.steps,
            normalize: self.normalize,
            method: self.method,
            outputs: self.outputs,
            bins: self.bins,
            hist_norm: self.hist_norm,
            out: self.out,
            svg: self.svg,
        }
    }

    fn resolve(self) -> Result<scenario::Scenario, CliError> {
        let file = match &self.scenario {
            Some(path) => Partial::from_file(path)?,
            None => Partial::default(),
        };
        self.into_partial().overlay(file).resolve()
    }
}

fn dispatch(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Run(args) => run::execute_run(&args.resolve()?),
        Command::ScanAlpha(args) => {
            let alphas = args.alphas.clone();
            run::execute_scan(&alphas, &args.scenario.resolve()?)
        }
        Command::Reproduce(args) => {
            let out = args
                .out
                .unwrap_or_else(|| PathBuf::from("out").join(args.figure.name()));
            reproduce::execute(args.figure, &out)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}
