use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use evasion_core::lemmas::FormSource;

mod commands;

/// Verification driver for the graph-property evasiveness argument on ten
/// vertices.
#[derive(Debug, Parser)]
#[command(name = "evasion", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List the vertex-transitive graphs up to isomorphism.
    Catalog {
        #[arg(long, default_value_t = 10)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Inclusion order on the catalog, with a check of every listed relation.
    Poset {
        /// Print the Hasse diagram as DOT instead.
        #[arg(long)]
        dot: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Verify one lemma setup, or `all`.
    Lemma {
        name: String,
        /// Lemma file replacing the bundled one.
        #[arg(long)]
        lemmas: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Enumerate the monotone 0/1 solutions of the lemma system.
    Solve {
        /// Additional constraint, e.g. "i2 = 0". Repeatable.
        #[arg(long = "extra", value_name = "FORM")]
        extras: Vec<String>,
        /// Chain library whose forms are added to the system.
        #[arg(long, value_name = "FILE")]
        chains: Option<PathBuf>,
        #[arg(long, default_value_t = 10)]
        n: usize,
        /// Do not compare against the bundled table.
        #[arg(long)]
        no_expect: bool,
        /// `printed` uses the stated lemma equations, `derived` the
        /// recomputed forms.
        #[arg(long, default_value = "printed")]
        source: FormSource,
        #[arg(long)]
        lemmas: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Replay the case analysis behind the six columns.
    Cases {
        #[arg(long, default_value = "printed")]
        source: FormSource,
        #[arg(long)]
        lemmas: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Search an ambient group for fixed-point chains and derive forms.
    Search {
        /// Generators of the ambient group in cycle notation. Repeatable.
        #[arg(long = "ambient", value_name = "CYCLES", required = true)]
        ambient: Vec<String>,
        #[arg(long, default_value_t = 10)]
        degree: usize,
        /// Largest subgroup order considered. Defaults to the ambient order.
        #[arg(long)]
        max_order: Option<usize>,
        /// Number of candidate tuples tested before giving up.
        #[arg(long, default_value_t = 10_000_000)]
        budget: usize,
        /// Write the chain library here, one JSON record per line.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Name the catalog class of a graph file.
    Identify {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

/// Outcome of a command, mapped onto the process exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    Mismatch,
    Truncated,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Catalog { n, format } => commands::catalog(n, format),
        Command::Poset { dot, format } => commands::poset(dot, format),
        Command::Lemma {
            name,
            lemmas,
            format,
        } => commands::lemma(&name, lemmas.as_deref(), format),
        Command::Solve {
            extras,
            chains,
            n,
            no_expect,
            source,
            lemmas,
            format,
        } => commands::solve(commands::SolveArgs {
            extras: &extras,
            chains: chains.as_deref(),
            n,
            expect: !no_expect,
            source,
            lemmas: lemmas.as_deref(),
            format,
        }),
        Command::Cases {
            source,
            lemmas,
            format,
        } => commands::cases(source, lemmas.as_deref(), format),
        Command::Search {
            ambient,
            degree,
            max_order,
            budget,
            out,
            format,
        } => commands::search(&ambient, degree, max_order, budget, out.as_deref(), format),
        Command::Identify { file, format } => commands::identify(&file, format),
    };
    match result {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::Mismatch) => ExitCode::from(1),
        Ok(Status::Truncated) => ExitCode::from(3),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
