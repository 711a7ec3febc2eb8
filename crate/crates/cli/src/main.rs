mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use skewpbw::corpus::corpus_get;
use skewpbw::instance::Instance;
use skewpbw::Error;

pub const EXIT_FAIL: u8 = 1;
pub const EXIT_PARSE: u8 = 2;
pub const EXIT_OTHER: u8 = 3;

/// Decide and cross-check the PBW property of deformations of S(V)#G.
///
/// INSTANCE is a path to an instance file or `corpus:<name>`. Exit status is
/// 0 when every requested check passes, 1 when one fails, 2 on a parse
/// error and 3 on any other error.
#[derive(Parser)]
#[command(name = "skewpbw", version)]
struct Cli {
    /// Append a key-value block after the human-readable report.
    #[arg(long, global = true)]
    structured: bool,
    /// Seed for randomized runs.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the five PBW conditions.
    Check {
        instance: String,
        /// Also compare the conditions with the rewriting oracle on this
        /// many random parameter choices over the same representation.
        #[arg(long, default_value_t = 0)]
        random: usize,
    },
    /// Resolve all overlap ambiguities and count filtered dimensions.
    Oracle {
        instance: String,
        #[arg(long, default_value_t = 4)]
        max_degree: u32,
    },
    /// Check the cocycle and obstruction identities on the resolution.
    Homology { instance: String },
    /// Build and verify H_{lambda,0} = H_{0,kappa} when |G| is invertible.
    Convert { instance: String },
    /// Search exhaustively for filtered isomorphisms onto an algebra.
    ///
    /// Without --target, INSTANCE is the target and the sources are all
    /// H_{0,kappa'} with kappa' in kG. With --target, INSTANCE is the only
    /// source.
    IsoSearch {
        instance: String,
        #[arg(long)]
        target: Option<String>,
    },
    /// Read the multiplication maps mu_j of the graded lift.
    MuExtract {
        instance: String,
        #[arg(long, default_value_t = 2)]
        degree: u32,
    },
    /// The built-in gallery of instances.
    Examples {
        #[command(subcommand)]
        action: ExamplesAction,
    },
}

#[derive(Subcommand)]
enum ExamplesAction {
    /// List the entries.
    List,
    /// Run every applicable check on one entry (or all entries).
    Run { name: Option<String> },
}

pub enum CliError {
    Parse(String),
    Other(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. } => CliError::Parse(e.to_string()),
            other => CliError::Other(other.to_string()),
        }
    }
}

pub fn load(spec: &str) -> Result<Instance, CliError> {
    if let Some(name) = spec.strip_prefix("corpus:") {
        return Ok(corpus_get(name)?);
    }
    let path = PathBuf::from(spec);
    let text = std::fs::read_to_string(&path)
        .map_err(|e| CliError::Other(format!("cannot read {}: {e}", path.display())))?;
    Instance::parse(&text).map_err(|e| match e {
        Error::Parse { .. } => CliError::Parse(format!("{}: {e}", path.display())),
        other => CliError::Other(other.to_string()),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Check { instance, random } => commands::check(instance, *random, cli.seed),
        Command::Oracle {
            instance,
            max_degree,
        } => commands::oracle(instance, *max_degree),
        Command::Homology { instance } => commands::homology(instance),
        Command::Convert { instance } => commands::convert(instance),
        Command::IsoSearch { instance, target } => {
            commands::iso_search(instance, target.as_deref())
        }
        Command::MuExtract { instance, degree } => commands::mu_extract(instance, *degree),
        Command::Examples { action } => match action {
            ExamplesAction::List => commands::examples_list(),
            ExamplesAction::Run { name } => commands::examples_run(name.as_deref()),
        },
    };
    match result {
        Ok(mut report) => {
            report.field("seed", cli.seed);
            print!("{}", report.render(cli.structured));
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_FAIL)
            }
        }
        Err(CliError::Parse(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_PARSE)
        }
        Err(CliError::Other(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_OTHER)
        }
    }
}
