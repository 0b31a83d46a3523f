//! `ordsub`: classify, minimize and certify ordinal set functions from JSON
//! files, and run the exhaustive verification suites.
//!
//! Exit codes: 0 success or property holds, 1 property fails or witness
//! found, 2 usage or input error.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAILS: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

#[derive(Debug, Parser)]
#[command(name = "ordsub", version, about = "Ordinal submodularity toolkit for set functions on 2^E")]
pub struct Cli {
    /// Print a JSON run report instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    /// Worker threads for pair scans and enumerations.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
    pub threads: u16,

    /// Include violation witnesses in reports.
    #[arg(long, global = true)]
    pub witness: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Report membership in every condition class.
    Classify {
        file: PathBuf,
        /// List every violating pair instead of the first (capped at --limit).
        #[arg(long)]
        all_witnesses: bool,
        #[arg(long, default_value_t = 100)]
        limit: usize,
    },
    /// Find minimizers by brute force or by interval descent.
    Minimize {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Brute)]
        mode: Mode,
        /// Start point for descent, comma-joined element names ("" is the empty set).
        #[arg(long, default_value = "")]
        start: String,
    },
    /// Certify that a point is a global minimizer.
    Certify {
        file: PathBuf,
        /// Comma-joined element names ("" is the empty set).
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        /// Trust this hypothesis instead of checking it.
        #[arg(long, value_enum)]
        assume: Option<AssumeArg>,
    },
    /// Level values, the nested level-set chain and the (Qh) check.
    Hierarchy {
        /// A set-function file, or a chain file with --chain.
        file: PathBuf,
        /// Read a chain file and build the (Qh) function it induces.
        #[arg(long)]
        chain: bool,
    },
    /// Minimize PHI over the subsets where F exceeds its k-th smallest value.
    Constrained {
        phi: PathBuf,
        f: PathBuf,
        #[arg(long)]
        k: usize,
    },
    /// Run an exhaustive verification suite.
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long)]
        n: usize,
    },
    /// Write a generated function as a set-function file.
    Generate {
        #[command(subcommand)]
        kind: GenerateKind,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Find the first small function whose classification matches a predicate.
    Search {
        #[arg(long)]
        n: usize,
        /// e.g. "Q4 & !Q3" or "Qh ∧ ¬(Q1 ∧ Q2)".
        #[arg(long)]
        predicate: String,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Brute,
    Descent,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AssumeArg {
    Q1,
    Q2,
    Q4Injective,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Write the function here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Use the sparse subset-keyed form.
    #[arg(long, global = true)]
    pub sparse: bool,
}

#[derive(Debug, Subcommand)]
pub enum GenerateKind {
    /// Constant function.
    Const {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        value: i64,
    },
    /// Graph cut function; edges as `u-v:w`, comma separated, w an integer or `p/q`.
    Cut {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "")]
        edges: String,
    },
    /// Modular weights plus a concave function of the cardinality.
    Concave {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        weights: String,
        #[arg(long, allow_hyphen_values = true)]
        g: String,
    },
    /// Seeded random function with a fixed number of distinct values.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        distinct: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = KindArg::Integer)]
        codomain: KindArg,
        /// Label order for --codomain labels, comma separated.
        #[arg(long)]
        labels: Option<String>,
    },
    /// The i-th weak order in enumeration order (n <= 3).
    Weak {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        index: usize,
    },
    /// The i-th linear order in enumeration order (n <= 3).
    Linear {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        index: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Integer,
    Rational,
    Labels,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { EXIT_OK });
        }
    };
    match commands::run(&cli) {
        Ok(report) => {
            report.emit(cli.json);
            ExitCode::from(report.status)
        }
        Err(e) => {
            eprintln!("ordsub: {e:#}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
