use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use cfwp_cli::{run_build, run_crosscheck, run_export, run_query, CliError, ExportKind, Outcome, SpecDocument};

/// Pushdown recognizers for semigroup and monoid word problems.
#[derive(Parser)]
#[command(name = "cfwp", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the target and summarize it.
    Build { spec: PathBuf },
    /// Decide whether two words are equal; `#` and the reversal are added internally.
    Query {
        spec: PathBuf,
        /// Letters separated by spaces, or one letter per character.
        #[arg(long, allow_hyphen_values = true)]
        left: String,
        #[arg(long, allow_hyphen_values = true)]
        right: String,
    },
    /// Compare the recognizer with the oracle on all pairs within the bounds.
    Crosscheck {
        spec: PathBuf,
        #[arg(long)]
        max_left: usize,
        #[arg(long)]
        max_right: usize,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Check this many random pairs instead of all of them.
        #[arg(long)]
        sample: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Print the target as a pda spec document, a grammar or a dot graph.
    Export {
        spec: PathBuf,
        #[arg(long, value_enum)]
        what: ExportKind,
    },
}

fn load(path: &Path) -> Result<SpecDocument, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })?;
    SpecDocument::parse(&text)
}

fn run(cli: Cli) -> Result<Outcome, CliError> {
    match cli.command {
        Command::Build { spec } => run_build(&load(&spec)?),
        Command::Query { spec, left, right } => run_query(&load(&spec)?, &left, &right),
        Command::Crosscheck { spec, max_left, max_right, jobs, sample, seed } => {
            run_crosscheck(&load(&spec)?, max_left, max_right, jobs, sample, seed)
        }
        Command::Export { spec, what } => run_export(&load(&spec)?, what),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(out.code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
