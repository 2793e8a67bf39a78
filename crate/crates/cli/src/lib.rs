//! Command-line front end: argument definitions, dispatch and exit codes.

pub mod commands;
pub mod report;
pub mod schema;

use std::time::Instant;

use chowres::resolutions::ResolutionError;
use chowres::{ChernError, GtError, QuiverError, RingError};
use clap::{Args, Parser, Subcommand};
use serde_json::json;
use thiserror::Error;

use crate::commands::{QuiverArgs, QuiverOp};
use crate::report::{Outcome, RunReport};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_UNSUPPORTED: i32 = 3;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CliError {
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("unsupported instance: {0}")]
    Unsupported(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Invalid(_) => EXIT_INVALID,
            CliError::Unsupported(_) => EXIT_UNSUPPORTED,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Invalid(_) => "invalid_input",
            CliError::Unsupported(_) => "unsupported_instance",
        }
    }
}

impl From<QuiverError> for CliError {
    fn from(e: QuiverError) -> Self {
        match e {
            QuiverError::UnsupportedInstance(msg) => CliError::Unsupported(msg),
            QuiverError::CyclicQuiver => CliError::Unsupported(e.to_string()),
            _ => CliError::Invalid(e.to_string()),
        }
    }
}

impl From<chowres::ExactError> for CliError {
    fn from(e: chowres::ExactError) -> Self {
        CliError::Invalid(e.to_string())
    }
}

impl From<RingError> for CliError {
    fn from(e: RingError) -> Self {
        CliError::Invalid(e.to_string())
    }
}

impl From<ChernError> for CliError {
    fn from(e: ChernError) -> Self {
        CliError::Invalid(e.to_string())
    }
}

impl From<GtError> for CliError {
    fn from(e: GtError) -> Self {
        CliError::Invalid(e.to_string())
    }
}

impl From<ResolutionError> for CliError {
    fn from(e: ResolutionError) -> Self {
        match e {
            ResolutionError::Quiver(q) => q.into(),
            other => CliError::Invalid(other.to_string()),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "chowres", version, about = "Diagonal classes of quiver moduli and related test spaces")]
pub struct Cli {
    /// Render a human-readable report instead of JSON.
    #[arg(long, global = true)]
    pub pretty: bool,
    /// Include wall-clock time in the report (output is then not reproducible).
    #[arg(long, global = true)]
    pub timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Euler form, Hom/Ext, stability, moduli dimension and path counts.
    Quiver {
        #[command(subcommand)]
        op: QuiverCommand,
    },
    /// Diagonal class from the universal resolution.
    Diagonal {
        #[command(subcommand)]
        space: DiagonalCommand,
    },
    /// Staircases, tangent spaces and the quiver presentation of G_T.
    Gt {
        #[command(subcommand)]
        op: GtCommand,
    },
    /// Based rings of the test spaces.
    Ring {
        #[command(subcommand)]
        space: RingCommand,
    },
}

#[derive(Debug, Args, Clone)]
pub struct QuiverInput {
    /// Quiver or representation document (JSON).
    #[arg(long)]
    pub input: std::path::PathBuf,
    /// Second document for two-argument operations.
    #[arg(long)]
    pub other: Option<std::path::PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum QuiverCommand {
    /// <dim(input), dim(other)>.
    Euler(QuiverInput),
    /// dim Hom and dim Ext^1 from input to other.
    Homext(QuiverInput),
    /// King stability with respect to a weight.
    Stable {
        #[command(flatten)]
        input: QuiverInput,
        /// Comma-separated weights in vertex order; overrides "theta" in the document.
        #[arg(long, allow_hyphen_values = true)]
        theta: Option<String>,
    },
    /// 1 - <alpha, alpha>.
    ModuliDim(QuiverInput),
    /// Path counts, for one pair or the whole table.
    Paths {
        #[command(flatten)]
        input: QuiverInput,
        #[arg(long)]
        from: Option<String>,
        #[arg(long)]
        to: Option<String>,
    },
}

#[derive(Debug, Subcommand)]
pub enum DiagonalCommand {
    /// Projective space P^n via the Kronecker quiver with n + 1 arrows.
    Pn {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        twist: i64,
    },
    /// Grassmannian Gr(k, n) via the Kronecker quiver with n arrows.
    Grass {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        twist: i64,
    },
    /// Structural checks for G_T.
    Gt {
        #[arg(long = "T", value_delimiter = ',', required = true)]
        t: Vec<u64>,
    },
    /// Structural checks for the plane-sheaf quiver.
    P2 {
        #[arg(long, allow_hyphen_values = true)]
        r: i64,
        #[arg(long, allow_hyphen_values = true)]
        c1: i64,
        #[arg(long, allow_hyphen_values = true)]
        chi: i64,
        #[arg(long, default_value_t = 100, allow_hyphen_values = true)]
        m: i64,
    },
}

#[derive(Debug, Subcommand)]
pub enum GtCommand {
    /// Staircases with Hilbert function T.
    Cells {
        #[arg(long = "T", value_delimiter = ',', required = true)]
        t: Vec<u64>,
    },
    /// Tangent dimension at every staircase.
    Tangent {
        #[arg(long = "T", value_delimiter = ',', required = true)]
        t: Vec<u64>,
    },
    /// Quiver with relations, dimension vector and weight.
    Quiver {
        #[arg(long = "T", value_delimiter = ',', required = true)]
        t: Vec<u64>,
    },
}

#[derive(Debug, Subcommand)]
pub enum RingCommand {
    Pn {
        #[arg(long)]
        n: usize,
        /// Include the multiplication table and degree functional.
        #[arg(long)]
        constants: bool,
    },
    Grass {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        constants: bool,
    },
}

fn read(path: &std::path::Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Invalid(format!("cannot read {}: {e}", path.display())))
}

fn run_quiver(op: &QuiverCommand) -> Result<Outcome, CliError> {
    let (kind, input, mut args) = match op {
        QuiverCommand::Euler(i) => (QuiverOp::Euler, i, QuiverArgs::default()),
        QuiverCommand::Homext(i) => (QuiverOp::HomExt, i, QuiverArgs::default()),
        QuiverCommand::ModuliDim(i) => (QuiverOp::ModuliDim, i, QuiverArgs::default()),
        QuiverCommand::Stable { input, theta } => {
            let theta = theta.as_deref().map(schema::parse_rational_list).transpose()?;
            (QuiverOp::Stable, input, QuiverArgs { theta, ..Default::default() })
        }
        QuiverCommand::Paths { input, from, to } => {
            (QuiverOp::Paths, input, QuiverArgs { from: from.clone(), to: to.clone(), ..Default::default() })
        }
    };
    args.other = input.other.as_deref().map(read).transpose()?;
    commands::quiver(kind, &read(&input.input)?, &args)
}

/// Runs a parsed command.
pub fn execute(command: &Command) -> Result<Outcome, CliError> {
    match command {
        Command::Quiver { op } => run_quiver(op),
        Command::Diagonal { space } => match space {
            DiagonalCommand::Pn { n, twist } => commands::diagonal_pn(*n, *twist),
            DiagonalCommand::Grass { k, n, twist } => commands::diagonal_grass(*k, *n, *twist),
            DiagonalCommand::Gt { t } => commands::diagonal_gt(t),
            DiagonalCommand::P2 { r, c1, chi, m } => commands::diagonal_p2(*r, *c1, *chi, *m),
        },
        Command::Gt { op } => match op {
            GtCommand::Cells { t } => commands::gt_cells(t),
            GtCommand::Tangent { t } => commands::gt_tangent(t),
            GtCommand::Quiver { t } => commands::gt_quiver_cmd(t),
        },
        Command::Ring { space } => match space {
            RingCommand::Pn { n, constants } => commands::ring_pn(*n, *constants),
            RingCommand::Grass { k, n, constants } => commands::ring_grass(*k, *n, *constants),
        },
    }
}

/// Output text and exit code for an invocation; `argv` excludes the program name.
pub fn run(cli: &Cli, argv: Vec<String>) -> (String, i32) {
    let start = Instant::now();
    let result = execute(&cli.command);
    let elapsed = start.elapsed().as_secs_f64() * 1000.0;
    match result {
        Ok(outcome) => {
            let report = RunReport::new(argv, outcome, cli.timing.then_some(elapsed));
            let code = if report.passed() { EXIT_PASS } else { EXIT_CHECK_FAILED };
            let text = if cli.pretty { report.to_text() } else { report.to_json() };
            (text, code)
        }
        Err(e) => {
            let text = if cli.pretty {
                format!("command: {}\nerror ({}): {e}\n", argv.join(" "), e.kind())
            } else {
                json!({"command": argv, "error": {"kind": e.kind(), "message": e.to_string()}}).to_string()
            };
            (text, e.exit_code())
        }
    }
}
