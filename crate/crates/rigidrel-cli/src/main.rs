//! `rigidrel` — build, check, and tabulate rigid binary relations.
//!
//! Exit codes: 0 for a positive verdict (or a successful build/report),
//! 1 for a negative verdict, 2 for any error (bad arguments, parse
//! failures, exceeded search bounds).

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod format;

#[derive(Parser)]
#[command(name = "rigidrel", version, about = "Rigid binary relations at finite scale")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide a rigidity property of a relation file
    Check {
        /// Relation file to check
        file: PathBuf,
        /// Property to decide
        #[arg(long, value_enum)]
        mode: CheckMode,
        /// Override the search bound for this mode
        #[arg(long)]
        max_n: Option<usize>,
    },
    /// Build a relation with one of the rigid constructions
    Build {
        #[command(subcommand)]
        kind: BuildKind,
    },
    /// Exhaustively confirm that finitely supported relations on a set of
    /// atoms are never rigid
    Fraenkel {
        /// Number of atoms
        #[arg(long)]
        atoms: usize,
        /// Largest support size to sweep
        #[arg(long)]
        max_support: usize,
        /// Override the atom bound
        #[arg(long)]
        max_n: Option<usize>,
        /// Worker threads (default: all cores)
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Tabulate rigidity counts over all labeled relations, one row per n
    Census {
        /// Largest vertex count to tabulate
        #[arg(long)]
        max_n: usize,
        /// Enumeration method
        #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
        method: MethodArg,
        /// Worker threads (default: all cores)
        #[arg(long)]
        threads: Option<usize>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum CheckMode {
    Rigid,
    Strong,
    Hereditary,
    Irreflexive,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    /// Labeled enumeration where it fits, isomorph rejection above
    Auto,
    /// Classify every labeled edge set
    Labeled,
    /// Classify one representative per isomorphism class
    Classes,
}

#[derive(Args)]
struct OutputOpts {
    /// Output file (stdout if omitted)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also check the result for rigidity; exit 1 if it is not rigid
    #[arg(long)]
    verify: bool,
    /// Emit DOT instead of the relation file format
    #[arg(long)]
    dot: bool,
    /// Override the rigidity bound used by --verify
    #[arg(long)]
    max_n: Option<usize>,
}

#[derive(Subcommand)]
enum BuildKind {
    /// The strict linear order on `count` vertices
    Linorder {
        #[arg(long)]
        count: usize,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Same construction in its role as a product base
    Ordinal {
        #[arg(long)]
        gamma: usize,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Prefix-separated relation on a carrier of binary-string points
    Cantor {
        /// Comma-separated points, e.g. 00,01,10,11
        #[arg(long, value_delimiter = ',', required = true)]
        points: Vec<String>,
        /// Carrier index of the looped apex z*
        #[arg(long)]
        zstar: usize,
        /// Comma-separated carrier indices of the chain z_0,z_1,...
        #[arg(long, value_delimiter = ',')]
        chain: Vec<usize>,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Spine-plus-base product on (point, label) pairs
    ProductMain {
        /// Comma-separated pairs, e.g. 00:0,01:1
        #[arg(long, value_delimiter = ',', required = true)]
        pairs: Vec<String>,
        /// Relation file with the irreflexive, hereditarily rigid base
        #[arg(long)]
        base: PathBuf,
        #[arg(long)]
        zstar: usize,
        #[arg(long, value_delimiter = ',')]
        chain: Vec<usize>,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Lexicographic product on (point, label) pairs
    ProductLex {
        /// Comma-separated pairs, e.g. 00:0,01:1
        #[arg(long, value_delimiter = ',', required = true)]
        pairs: Vec<String>,
        /// Relation file with the irreflexive, hereditarily rigid base
        #[arg(long)]
        base: PathBuf,
        #[command(flatten)]
        out: OutputOpts,
    },
}

fn run(cli: Cli) -> anyhow::Result<u8> {
    match cli.command {
        Command::Check { file, mode, max_n } => commands::run_check(&file, mode, max_n),
        Command::Build { kind } => commands::run_build(&kind),
        Command::Fraenkel {
            atoms,
            max_support,
            max_n,
            threads,
        } => commands::run_fraenkel(atoms, max_support, max_n, threads),
        Command::Census {
            max_n,
            method,
            threads,
        } => commands::run_census(max_n, method, threads),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}
