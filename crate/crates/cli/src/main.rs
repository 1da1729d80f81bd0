mod checks;
mod commands;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use coxtwist::coxeter::DEFAULT_ELEMENT_BUDGET;
use coxtwist::presets::{resolve_group, GroupSpec};
use coxtwist::topology::DEFAULT_CHAIN_BUDGET;
use coxtwist::twisted::TwistedSystem;
use coxtwist::Error;

/// Twisted involutions in Coxeter groups: enumeration, Bruhat posets,
/// interval homology and Poincaré series.
#[derive(Debug, Parser)]
#[command(name = "coxtwist", version)]
struct Cli {
    /// Preset name (A5:flip, D4:swap, E6:flip, F4:flip, I2(5):swap,
    /// affineA2, square(A2), ...) or path to a JSON group file.
    #[arg(long, global = true)]
    group: Option<String>,

    /// Override the diagram involution: id, flip, swap or 0-based images
    /// such as 4,3,2,1,0.
    #[arg(long, global = true)]
    theta: Option<String>,

    /// Truncate enumerations at this rank (required for infinite groups).
    #[arg(long, global = true)]
    max_rank: Option<usize>,

    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Maximum number of group elements or twisted involutions to enumerate.
    #[arg(long, global = true, default_value_t = DEFAULT_ELEMENT_BUDGET,
          value_parser = positive)]
    budget_elements: usize,

    /// Maximum number of chains in one order complex.
    #[arg(long, global = true, default_value_t = DEFAULT_CHAIN_BUDGET,
          value_parser = positive)]
    budget_chains: usize,

    #[command(subcommand)]
    command: Command,
}

fn positive(text: &str) -> Result<usize, String> {
    match text.parse::<usize>() {
        Ok(n) if n > 0 => Ok(n),
        _ => Err(format!("expected a positive integer, got {text:?}")),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SetKind {
    #[value(name = "W")]
    W,
    Inv,
    Iota,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List the elements of W, of the twisted involutions or of the twisted
    /// identities with their rank data.
    Enumerate {
        #[arg(long, value_enum, default_value = "iota")]
        set: SetKind,
    },
    /// Export the Bruhat poset of twisted identities or twisted involutions.
    Poset {
        #[arg(long, value_enum, default_value = "iota")]
        set: SetKind,
    },
    /// Run a named verification and report PASS or FAIL with a witness.
    Check {
        #[arg(value_enum)]
        name: checks::CheckName,
    },
    /// Reduced homology of an open interval of twisted identities, given by
    /// S̲-expressions such as 3 and 213.
    Homology {
        #[arg(long, required = true, num_args = 2, value_names = ["U", "V"])]
        interval: Vec<String>,
    },
    /// Poincaré series of W, of the twisted identities and of Fix(θ).
    Series,
}

/// Everything a command needs besides its own arguments.
pub struct Context {
    pub spec: GroupSpec,
    pub ts: TwistedSystem,
    pub max_rank: Option<usize>,
    pub format: Option<Format>,
    pub budget_elements: usize,
    pub budget_chains: usize,
}

/// Why a command did not succeed.
#[derive(Debug)]
pub enum Failure {
    /// A check failed; its report has been printed.
    CheckFailed,
    Usage(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn context(cli: &Cli) -> Result<Context, Failure> {
    let source = cli
        .group
        .as_deref()
        .ok_or_else(|| Failure::Usage("--group is required".into()))?;
    let mut spec = resolve_group(source)?;
    if let Some(theta) = &cli.theta {
        spec = spec.with_theta(theta)?;
    }
    let ts = spec.twisted()?;
    Ok(Context {
        spec,
        ts,
        max_rank: cli.max_rank,
        format: cli.format,
        budget_elements: cli.budget_elements,
        budget_chains: cli.budget_chains,
    })
}

fn run(cli: &Cli) -> Result<(), Failure> {
    let ctx = context(cli)?;
    match &cli.command {
        Command::Enumerate { set } => commands::enumerate(&ctx, *set),
        Command::Poset { set } => commands::poset(&ctx, *set),
        Command::Check { name } => checks::run(&ctx, *name),
        Command::Homology { interval } => commands::homology(&ctx, &interval[0], &interval[1]),
        Command::Series => commands::series(&ctx),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(3) } else { ExitCode::SUCCESS };
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::CheckFailed) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_budget() { 2 } else { 3 })
        }
    }
}
