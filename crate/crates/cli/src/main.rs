use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod cmd;
mod files;

/// Sweeping processes and play operators driven by BV inputs.
#[derive(Parser)]
#[command(name = "sweepbv", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one play problem and verify the result.
    Solve(Common),
    /// Tabulate |y_n - y|_BV for perturbation families u_n -> u.
    BvContinuity(Common),
    /// Run the full verification suite over a directory of solve requests.
    Corpus(Common),
    /// Print the JSON formats with examples.
    DescribeSchemas(Common),
}

#[derive(Args, Clone, Debug)]
pub struct Common {
    /// Input file (solve, bv-continuity) or directory (corpus).
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Output directory.
    #[arg(long, default_value = "out")]
    pub out: PathBuf,
    /// Grid step overriding the configuration.
    #[arg(long)]
    pub h: Option<f64>,
    /// Seed of the random test functions and perturbation directions.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Solver variant.
    #[arg(long, value_enum)]
    pub method: Option<MethodArg>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Direct,
    Reparam,
    Both,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Solve(args) => cmd::solve::run(args),
        Command::BvContinuity(args) => cmd::continuity::run(args),
        Command::Corpus(args) => cmd::corpus::run(args),
        Command::DescribeSchemas(args) => cmd::schemas::run(args),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
