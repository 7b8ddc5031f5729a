//! `diffscale` command-line front end.
//!
//! Exit status: 0 success, 1 unexpected failure, 2 usage error, 3 invalid
//! spec or resolution, 4 unreadable or malformed input, 5 domain error.

mod corpus;
mod cost;
mod curves;
mod output;
mod scaling;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use diffscale::{Error, ErrorCategory};

use output::Format;

#[derive(Debug, Parser)]
#[command(
    name = "diffscale",
    version,
    about = "Cost, scaling and data analysis for text-to-image diffusion backbones"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,

    /// Write the report to a file instead of standard output.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Parameter and MAC counts of one architecture.
    Analyze(cost::AnalyzeArgs),
    /// Costs of every built-in architecture next to the published figures.
    Catalog(cost::CatalogArgs),
    /// Costs of channel and transformer-depth variants of a UNet.
    Enumerate(cost::EnumerateArgs),
    /// Training FLOPs of a schedule.
    Budget(cost::BudgetArgs),
    /// Pareto frontier of a points file.
    Pareto(scaling::ParetoArgs),
    /// Power-law fit on the frontier of a points file, with predictions.
    Fit(scaling::FitArgs),
    /// Evaluate or invert a power law.
    Predict(scaling::PredictArgs),
    /// Steps, speedups and compute to reach a metric threshold.
    Curves(curves::CurvesArgs),
    /// Image, noun and aesthetic statistics of a caption corpus.
    CorpusStats(corpus::StatsArgs),
    /// Simulate caption mixing over a corpus.
    MixSim(corpus::MixArgs),
}

/// Architecture selected by built-in name or spec file.
#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct SpecSource {
    /// Name of a built-in architecture (see `catalog`).
    #[arg(long)]
    builtin: Option<String>,

    /// Spec document (TOML or JSON).
    #[arg(long)]
    spec: Option<PathBuf>,
}

pub struct Ctx {
    pub format: Format,
    pub out: Box<dyn Write>,
}

fn run(cli: Cli) -> Result<()> {
    let out: Box<dyn Write> = match &cli.output {
        Some(path) => Box::new(BufWriter::new(
            File::create(path).with_context(|| format!("cannot create {}", path.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    let mut ctx = Ctx {
        format: cli.format,
        out,
    };
    match cli.command {
        Command::Analyze(a) => cost::analyze(&mut ctx, a)?,
        Command::Catalog(a) => cost::catalog(&mut ctx, a)?,
        Command::Enumerate(a) => cost::enumerate(&mut ctx, a)?,
        Command::Budget(a) => cost::budget(&mut ctx, a)?,
        Command::Pareto(a) => scaling::pareto(&mut ctx, a)?,
        Command::Fit(a) => scaling::fit(&mut ctx, a)?,
        Command::Predict(a) => scaling::predict(&mut ctx, a)?,
        Command::Curves(a) => curves::curves(&mut ctx, a)?,
        Command::CorpusStats(a) => corpus::stats(&mut ctx, a)?,
        Command::MixSim(a) => corpus::mix(&mut ctx, a)?,
    }
    ctx.out.flush()?;
    Ok(())
}

fn exit_code(err: &anyhow::Error) -> u8 {
    if let Some(e) = err.downcast_ref::<Error>() {
        return match e.category() {
            ErrorCategory::Validation => 3,
            ErrorCategory::Io => 4,
            ErrorCategory::Domain => 5,
        };
    }
    if err.downcast_ref::<io::Error>().is_some() || err.downcast_ref::<csv::Error>().is_some() {
        return 4;
    }
    1
}

fn report(err: &anyhow::Error) {
    match err.downcast_ref::<Error>() {
        Some(Error::Validation(violations)) => {
            eprintln!("error: invalid spec");
            for v in violations {
                eprintln!("  - {v}");
            }
        }
        _ => eprintln!("error: {err:#}"),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            if err
                .downcast_ref::<io::Error>()
                .is_some_and(|e| e.kind() == io::ErrorKind::BrokenPipe)
            {
                return ExitCode::SUCCESS;
            }
            report(&err);
            ExitCode::from(exit_code(&err))
        }
    }
}
