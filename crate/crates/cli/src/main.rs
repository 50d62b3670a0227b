use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

mod commands;

use commands::{CliError, Outcome};

#[derive(Parser)]
#[command(name = "antimatroid", version, about = "Antimatroids, isotone operators and the chain algorithm")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum What {
    Family,
    Operator,
    Linkage,
    Language,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RandomKind {
    /// Isotone operator with a monotone linkage.
    Isotone,
    /// Non-isotone operator with its failure linkage.
    NonIsotone,
}

#[derive(Subcommand)]
enum Command {
    /// Check the axioms of one part of an instance.
    Verify {
        path: PathBuf,
        #[arg(long, value_enum)]
        what: What,
    },
    /// List the family generated by the operator.
    Generate { path: PathBuf },
    /// Run the chain algorithm.
    Optimize {
        path: PathBuf,
        /// Optimize over non-empty feasible sets only.
        #[arg(long)]
        exclude_empty: bool,
        /// Print the chain table.
        #[arg(long)]
        trace: bool,
        /// Compare with the brute-force maximum.
        #[arg(long)]
        oracle: bool,
    },
    /// List the sets of size at most k.
    Truncate {
        path: PathBuf,
        #[arg(short)]
        k: usize,
    },
    /// List the union closure of the family (of its k-truncation with -k).
    Close {
        path: PathBuf,
        #[arg(short)]
        k: Option<usize>,
    },
    /// Antimatroid languages and the minimax nesting problem.
    Lang {
        path: PathBuf,
        #[command(subcommand)]
        sub: LangCommand,
    },
    /// Check the chain / minimax nesting correspondence.
    Correspond {
        path: PathBuf,
        /// Word length; 0 uses the family rank.
        #[arg(short, default_value_t = 0)]
        k: usize,
    },
    /// Print a random instance.
    Random {
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        n: usize,
        /// Linkage value levels for isotone instances.
        #[arg(long, default_value_t = 3)]
        levels: usize,
        #[arg(long, value_enum, default_value_t = RandomKind::Isotone)]
        kind: RandomKind,
    },
}

#[derive(Subcommand)]
enum LangCommand {
    /// List L(F).
    Words,
    /// Check the antimatroid language axioms.
    Check,
    /// Greedy minimax word of length k.
    Minimax {
        #[arg(short)]
        k: usize,
    },
}

fn run(cli: Cli) -> Result<Outcome, CliError> {
    match cli.command {
        Command::Verify { path, what } => commands::verify(&commands::load(&path)?, what),
        Command::Generate { path } => commands::generate(&commands::load(&path)?),
        Command::Optimize {
            path,
            exclude_empty,
            trace,
            oracle,
        } => commands::optimize(&commands::load(&path)?, exclude_empty, trace, oracle),
        Command::Truncate { path, k } => commands::truncate(&commands::load(&path)?, k),
        Command::Close { path, k } => commands::close(&commands::load(&path)?, k),
        Command::Lang { path, sub } => {
            let inst = commands::load(&path)?;
            match sub {
                LangCommand::Words => commands::lang_words(&inst),
                LangCommand::Check => commands::lang_check(&inst),
                LangCommand::Minimax { k } => commands::lang_minimax(&inst, k),
            }
        }
        Command::Correspond { path, k } => commands::correspond(&commands::load(&path)?, k),
        Command::Random {
            seed,
            n,
            levels,
            kind,
        } => commands::random(seed, n, levels, kind),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(outcome) => {
            print!("{}", outcome.text);
            ExitCode::from(if outcome.pass { 0 } else { 1 })
        }
        Err(e) => {
            print!("{}", e.partial);
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
