//! `loopsmith`: validate tables, build product loops, search sections and
//! run the octonion checks.
//!
//! Exit codes: 0 success, 1 domain failure (named clause or failed axiom),
//! 2 usage or parse error.

mod commands;
mod input;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// A failure of the mathematics rather than of the input.
#[derive(Debug)]
pub struct Domain(pub String);

impl std::fmt::Display for Domain {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Domain {}

#[derive(Parser)]
#[command(name = "loopsmith", version, about = "Finite loops, sharply transitive sections and octavian units")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Report which axioms a .tbl table satisfies.
    Validate { table: PathBuf },
    /// Build the K × P loop, its group and section from a .prod.json spec.
    BuildProduct {
        spec: PathBuf,
        /// Directory for loop.tbl, group.tbl, section.txt and the reports.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Structural report on a loop table.
    Check {
        table: PathBuf,
        /// Comma-separated elements to test as a (normal) subloop.
        #[arg(long)]
        subloop: Option<String>,
        /// Directory for the factor loop when the subloop is normal.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Enumerate sharply transitive sections of a .sect.json instance.
    SearchSections {
        instance: PathBuf,
        #[arg(long)]
        count_only: bool,
        #[arg(long, value_name = "N")]
        limit: Option<usize>,
        #[arg(long)]
        require_generation: bool,
        #[arg(long)]
        parallel: bool,
        /// Do not force the section to pick the identity from H.
        #[arg(long)]
        unpinned: bool,
        /// One section per conjugation orbit under the normalizer of H.
        #[arg(long)]
        symmetry_breaking: bool,
    },
    /// Isomorphism classes of the loops of all pinned sections.
    Classify {
        instance: PathBuf,
        /// Directory for one .tbl per class.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Float and exact octonion checks, including the 240 octavian units.
    OctonionDemo {
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Directory for octavian.tbl, octavian.coords and the factor loop.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn run(cli: Cli) -> anyhow::Result<i32> {
    match cli.command {
        Command::Validate { table } => commands::validate(&table),
        Command::BuildProduct { spec, out } => commands::build_product(&spec, out.as_deref()),
        Command::Check { table, subloop, out } => commands::check(&table, subloop.as_deref(), out.as_deref()),
        Command::SearchSections {
            instance,
            count_only,
            limit,
            require_generation,
            parallel,
            unpinned,
            symmetry_breaking,
        } => commands::search_sections(
            &instance,
            &commands::SearchFlags {
                count_only,
                limit,
                require_generation,
                parallel,
                unpinned,
                symmetry_breaking,
            },
        ),
        Command::Classify { instance, out } => commands::classify(&instance, out.as_deref()),
        Command::OctonionDemo { samples, seed, out } => commands::octonion_demo(samples, seed, out.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.chain().any(|c| c.is::<Domain>()) {
                EXIT_DOMAIN
            } else {
                EXIT_USAGE
            }
        }
    };
    ExitCode::from(code as u8)
}
