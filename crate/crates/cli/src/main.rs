mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

/// Expected-runtime bounds for randomized recurrences.
#[derive(Debug, Parser)]
#[command(name = "rtbound", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum BoundArg {
    Logn,
    N,
    Nlogn,
    Auto,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Decide,
    Synth,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide or synthesize a bound for the relation in FILE.
    Analyze {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "auto")]
        bound: BoundArg,
        #[arg(long, value_enum, default_value = "synth")]
        mode: ModeArg,
        /// Slack in (0, 1) used by synthesis.
        #[arg(long, default_value = "0.01")]
        epsilon: String,
        #[arg(long)]
        json: bool,
    },
    /// Tabulate the exact solution of the relation in FILE.
    Eval {
        file: PathBuf,
        /// Last argument to evaluate (the recursion variable).
        #[arg(long)]
        upto: u64,
        /// Fixed first argument of a bivariate relation.
        #[arg(long)]
        n: Option<u64>,
        #[arg(long)]
        json: bool,
    },
    /// Reproduce the published results for the built-in corpus.
    Corpus {
        #[arg(long, value_delimiter = ',', default_value = "0.5,0.3,0.1,0.01")]
        epsilons: Vec<String>,
        /// Expected results to compare against instead of the built-in ones.
        #[arg(long)]
        fixtures: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Analyze { file, bound, mode, epsilon, json } => commands::analyze(&file, bound, mode, &epsilon, json),
        Command::Eval { file, upto, n, json } => commands::eval(&file, upto, n, json),
        Command::Corpus { epsilons, fixtures, json } => commands::corpus(&epsilons, fixtures.as_deref(), json),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
