//! The `twistlab` command-line driver.
//!
//! Verbs:
//! - `verify <spec>` — run every task in a spec file, print the TOML report.
//! - `alg verify <spec>` — run only the algebra-side tasks.
//! - `equiv <spec>` — run only the equivalence tasks.
//! - `zoo list` / `zoo export <name>` — browse the fixture catalog; exports
//!   are complete runnable spec files.
//! - `search --dims N M --field P [--require ...] [--budget B] [--jobs K]` —
//!   enumerate twisting-map candidates, one JSON record per hit on stdout.
//!
//! Exit codes: `0` when everything requested passed, `1` when some check
//! failed mathematically, `2` on structural errors (unreadable input, parse
//! or validation failure, exhausted budget, task that could not run).

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use crate::error::Result;
use crate::search::{self, SearchConstraints};
use crate::specfile::{
    self, FieldChoice, ReportFile, ALGEBRA_CHECKS, EQUIVALENCE_CHECKS,
};

#[derive(Parser)]
#[command(
    name = "twistlab",
    version,
    about = "Exact construction and verification of twisted tensor products"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every task in a spec file and print the report.
    Verify {
        /// Path to a TOML spec file (see docs/spec-format.md).
        spec: PathBuf,
        /// Default candidate budget for equivalence searches.
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Run only the equivalence tasks in a spec file.
    Equiv {
        /// Path to a TOML spec file.
        spec: PathBuf,
        /// Default candidate budget for equivalence searches.
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Algebra-side commands.
    Alg {
        #[command(subcommand)]
        command: AlgCommand,
    },
    /// Browse the fixture catalog.
    Zoo {
        #[command(subcommand)]
        command: ZooCommand,
    },
    /// Enumerate every twisting-map candidate on a tensor square of
    /// group-like coalgebras over a prime field, streaming one JSON record
    /// per emitted candidate.
    Search {
        /// Dimensions of the two coalgebra factors.
        #[arg(long, num_args = 2, value_names = ["N", "M"], required = true)]
        dims: Vec<usize>,
        /// Prime modulus of the scalar field.
        #[arg(long, value_name = "P")]
        field: u64,
        /// Constraints every emitted candidate must satisfy
        /// (octagon, pentagons, conormal, counit, tw).
        #[arg(long = "require", value_delimiter = ',')]
        require: Vec<String>,
        /// Candidate budget; the run refuses to start past it.
        #[arg(long)]
        budget: Option<u64>,
        /// Worker threads (candidate k goes to worker k mod jobs).
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
}

#[derive(Subcommand)]
enum AlgCommand {
    /// Run only the algebra-side tasks in a spec file.
    Verify {
        /// Path to a TOML spec file.
        spec: PathBuf,
        /// Default candidate budget for equivalence searches.
        #[arg(long)]
        budget: Option<u64>,
    },
}

#[derive(Subcommand)]
enum ZooCommand {
    /// List catalog items with one-line descriptions.
    List,
    /// Print a catalog item as a complete runnable spec file.
    Export {
        /// Item name, as shown by `zoo list`.
        name: String,
        /// Build over F_p instead of the rationals.
        #[arg(long, value_name = "P")]
        field: Option<u64>,
    },
}

fn effective_budget(flag: Option<u64>) -> u64 {
    flag.unwrap_or_else(search::default_budget)
}

/// Exit code for a finished report: pass/fail/error -> 0/1/2.
fn report_code(report: &ReportFile) -> u8 {
    if report.any_error() {
        2
    } else if report.all_pass() {
        0
    } else {
        1
    }
}

fn run_spec_file(path: &PathBuf, budget: Option<u64>, filter: Option<&[&str]>) -> Result<u8> {
    let text = std::fs::read_to_string(path).map_err(|e| crate::error::Error::Parse {
        location: path.display().to_string(),
        message: e.to_string(),
    })?;
    let report = specfile::run_spec_text(&text, effective_budget(budget), filter)?;
    print!("{}", specfile::report_to_toml(&report)?);
    Ok(report_code(&report))
}

fn run_zoo(command: &ZooCommand) -> Result<u8> {
    match command {
        ZooCommand::List => {
            for (name, description) in crate::zoo::list() {
                println!("{name:<10} {description}");
            }
            Ok(0)
        }
        ZooCommand::Export { name, field } => {
            let choice = match field {
                Some(p) => FieldChoice::Prime(*p),
                None => FieldChoice::Rational,
            };
            let doc = specfile::export_zoo(name, choice)?;
            print!("{}", specfile::spec_to_toml(&doc)?);
            Ok(0)
        }
    }
}

fn run_search(
    dims: &[usize],
    p: u64,
    require: &[String],
    budget: Option<u64>,
    jobs: usize,
) -> Result<u8> {
    let constraints = SearchConstraints::from_names(require)?;
    let search = search::plan((dims[0], dims[1]), p, constraints, effective_budget(budget))?;
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let emit = |out: &mut dyn Write, hit: &search::SearchHit| -> Result<()> {
        let line = serde_json::to_string(hit)
            .map_err(|e| crate::error::Error::Validation(format!("hit serialization: {e}")))?;
        writeln!(out, "{line}")
            .map_err(|e| crate::error::Error::Validation(format!("write: {e}")))?;
        Ok(())
    };
    if jobs <= 1 {
        for hit in search.iter() {
            emit(&mut out, &hit)?;
        }
    } else {
        for hit in search.run_sharded(jobs) {
            emit(&mut out, &hit)?;
        }
    }
    Ok(0)
}

fn dispatch(cli: &Cli) -> Result<u8> {
    match &cli.command {
        Command::Verify { spec, budget } => run_spec_file(spec, *budget, None),
        Command::Equiv { spec, budget } => {
            run_spec_file(spec, *budget, Some(EQUIVALENCE_CHECKS))
        }
        Command::Alg {
            command: AlgCommand::Verify { spec, budget },
        } => run_spec_file(spec, *budget, Some(ALGEBRA_CHECKS)),
        Command::Zoo { command } => run_zoo(command),
        Command::Search {
            dims,
            field,
            require,
            budget,
            jobs,
        } => run_search(dims, *field, require, *budget, *jobs),
    }
}

/// Entry point for the `twistlab` binary.
pub fn cli_main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
