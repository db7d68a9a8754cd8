mod commands;
mod render;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use nichols_core::config::{OutputMode, RunConfig};
use nichols_core::selfcheck::DEFAULT_SEED;
use nichols_core::{par, Error};
use serde::Serialize;

#[derive(Parser, Debug)]
#[command(name = "nichols", version, about = "Exact computations with Nichols algebras and their rigidity")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalArgs {
    /// JSON run configuration.
    #[arg(short, long, global = true)]
    pub config: Option<PathBuf>,
    /// Emit the JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Worker threads (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    pub threads: usize,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Generalized Dynkin diagram and Cartan matrix.
    Diagram,
    /// Positive roots via the Weyl groupoid.
    Roots,
    /// Instantiated relation catalog with the (g_R, chi_R) test.
    Relations,
    /// Rigidity verdict.
    Rigidity {
        /// Judge the distinguished pre-Nichols algebra instead.
        #[arg(long)]
        pre_nichols: bool,
    },
    /// Nichols algebra dimensions from quantum symmetrizer ranks.
    Nichols {
        #[arg(long)]
        max_degree: Option<usize>,
    },
    /// Hilbert series of T(V) modulo the catalog relations, via rewriting.
    Rewrite {
        #[arg(long)]
        max_degree: Option<usize>,
    },
    /// Truncated graded bialgebra cohomology in negative degrees.
    Cohomology {
        /// A single degree; default all of -1 down to -2 * top degree.
        #[arg(long, allow_hyphen_values = true)]
        degree: Option<i64>,
        /// Also report the epsilon-cohomology identity.
        #[arg(long)]
        epsilon: bool,
    },
    /// dim H^2_eps(B, k) against dim Hom(M, k).
    Epsilon,
    /// Scheunert twist of a bicharacter file to a sign bicharacter.
    Twist {
        /// Bicharacter JSON: {"orders": [...], "values": [[...]]}.
        #[arg(long)]
        bicharacter: PathBuf,
    },
    /// Braided Lie axioms on the shipped examples.
    LieCheck {
        #[arg(long)]
        example: Option<String>,
    },
    /// gr U_c(L) against B(L, c).
    Pbw {
        #[arg(long, default_value_t = 4)]
        max_degree: usize,
        #[arg(long)]
        example: Option<String>,
    },
    /// Fomin-Kirillov algebra dimensions via rewriting.
    Fk {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        max_degree: usize,
        #[arg(long)]
        rigidity: bool,
    },
    /// Invariant suite.
    Selfcheck,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Diagram => "diagram",
            Command::Roots => "roots",
            Command::Relations => "relations",
            Command::Rigidity { .. } => "rigidity",
            Command::Nichols { .. } => "nichols",
            Command::Rewrite { .. } => "rewrite",
            Command::Cohomology { .. } => "cohomology",
            Command::Epsilon => "epsilon",
            Command::Twist { .. } => "twist",
            Command::LieCheck { .. } => "lie-check",
            Command::Pbw { .. } => "pbw",
            Command::Fk { .. } => "fk",
            Command::Selfcheck => "selfcheck",
        }
    }
}

#[derive(Serialize)]
pub struct Report {
    pub command: String,
    pub config_echo: Option<RunConfig>,
    pub results: serde_json::Value,
    pub warnings: Vec<String>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Done,
    /// Not decided, partial or failed check.
    Partial,
    Failed,
}

pub struct Outcome {
    pub results: serde_json::Value,
    pub warnings: Vec<String>,
    pub status: Status,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.global.threads > 0 {
        par::init_threads(cli.global.threads);
    }
    let config = match &cli.global.config {
        Some(path) => match RunConfig::load(path) {
            Ok(c) => Some(c),
            Err(e) => return fail(&e),
        },
        None => None,
    };
    let json = cli.global.json || config.as_ref().is_some_and(|c| c.output == OutputMode::Json);
    let outcome = match commands::run(&cli.command, config.as_ref(), &cli.global) {
        Ok(o) => o,
        Err(Error::Budget(msg)) => Outcome {
            results: serde_json::json!({ "budget_exceeded": msg }),
            warnings: vec![format!("budget exceeded: {msg}")],
            status: Status::Partial,
        },
        Err(e) => return fail(&e),
    };
    let report = Report {
        command: cli.command.name().to_string(),
        config_echo: config,
        results: outcome.results,
        warnings: outcome.warnings,
    };
    let text = if json {
        format!("{}\n", serde_json::to_string_pretty(&report).expect("report serializes"))
    } else {
        render::text(&report)
    };
    let _ = std::io::stdout().write_all(text.as_bytes());
    match outcome.status {
        Status::Done => ExitCode::SUCCESS,
        Status::Partial => ExitCode::from(2),
        Status::Failed => ExitCode::from(1),
    }
}

fn fail(e: &Error) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(1)
}
