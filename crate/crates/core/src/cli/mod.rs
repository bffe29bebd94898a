//! `realq` command-line front end.
//!
//! Exit codes: 0 every check passed, 1 a check failed, 2 the input could not
//! be read or parsed, 3 the input parsed but is invalid for the command.

pub mod commands;
pub mod document;
mod json;
pub mod report;

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

pub use document::{CircuitDocument, Circuit};
pub use report::{Check, Format, Report};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("cannot read input: {0}")]
    Io(String),
    #[error("validation error: {0}")]
    Validation(String),
    #[error("missing accept operator: {0}")]
    MissingAcceptOperator(String),
    #[error("incompatible document: {0}")]
    Incompatible(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) | CliError::Io(_) => 2,
            _ => 3,
        }
    }

    pub fn message(&self) -> String {
        match self {
            CliError::Parse(m)
            | CliError::Io(m)
            | CliError::Validation(m)
            | CliError::MissingAcceptOperator(m)
            | CliError::Incompatible(m) => m.clone(),
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Single,
    Multiparty,
    Separable,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Lemma1,
    Lemma2,
    Lemma3,
    Lemma4,
    Spectrum,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Qma,
    Qma2,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Base {
    #[value(name = "I")]
    I,
    #[value(name = "X")]
    X,
    #[value(name = "Y")]
    Y,
    #[value(name = "Z")]
    Z,
    #[value(name = "H")]
    H,
    #[value(name = "S")]
    S,
    #[value(name = "T")]
    T,
    #[value(name = "random")]
    Random,
}

fn value_name<T: ValueEnum>(v: &T) -> String {
    v.to_possible_value().expect("no skipped variants").get_name().to_string()
}

impl Mode {
    pub fn name(&self) -> String {
        value_name(self)
    }
}

impl Suite {
    pub fn name(&self) -> String {
        value_name(self)
    }
}

impl Base {
    pub fn name(&self) -> String {
        value_name(self)
    }
}

#[derive(Debug, Parser)]
#[command(name = "realq", version, about = "Encode complex circuits as real ones and check what survives")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Seed for every random choice.
    #[arg(long, global = true, env = "REALQ_SEED", default_value_t = 1)]
    pub seed: u64,

    /// Override every nonzero check tolerance.
    #[arg(long, global = true)]
    pub tol: Option<f64>,

    /// Write the report (or, for `encode`, the encoded document) here
    /// instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Encode gates and accept operator as real matrices.
    Encode {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Single)]
        mode: Mode,
        /// Where to write the report; stderr when absent.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Run one of the identity suites against a document.
    Verify {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum)]
        suite: Suite,
    },
    /// Optimal provers before and after encoding.
    Prover {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Kind::Qma)]
        kind: Kind,
        #[arg(long, default_value_t = 20)]
        restarts: usize,
        /// Maximum see-saw sweeps per restart.
        #[arg(long, default_value_t = 200)]
        iters: usize,
    },
    /// The global-phase distinguishability game.
    Counterexample {
        #[arg(long, default_value_t = 1)]
        qubits: usize,
        #[arg(long, value_enum, default_value_t = Base::I)]
        base: Base,
    },
}

fn load(path: &Path) -> Result<Circuit, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    CircuitDocument::parse(&text)?.resolve()
}

fn emit(path: Option<&Path>, text: &str, fallback: &mut dyn Write) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::Io(format!("{}: {e}", p.display()))),
        None => fallback.write_all(text.as_bytes()).map_err(|e| CliError::Io(e.to_string())),
    }
}

fn finish(cli: &Cli, mut report: Report) -> Report {
    if let Some(tol) = cli.tol {
        report.override_tolerance(tol);
        report.command += &format!(" --tol {tol:e}");
    }
    report
}

fn execute(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<bool, CliError> {
    let report = match &cli.command {
        Command::Encode { input, mode, report } => {
            let enc = commands::cmd_encode(&load(input)?, *mode, cli.seed)?;
            let r = finish(cli, enc.report);
            emit(cli.output.as_deref(), &enc.document.to_json(), out)?;
            emit(report.as_deref(), &r.render(cli.format), err)?;
            return Ok(r.pass);
        }
        Command::Verify { input, suite } => commands::cmd_verify(&load(input)?, *suite, cli.seed)?,
        Command::Prover { input, kind, restarts, iters } => {
            commands::cmd_prover(&load(input)?, *kind, *restarts, *iters, cli.seed)?
        }
        Command::Counterexample { qubits, base } => commands::cmd_counterexample(*qubits, *base, cli.seed)?,
    };
    let r = finish(cli, report);
    emit(cli.output.as_deref(), &r.render(cli.format), out)?;
    Ok(r.pass)
}

/// Runs a parsed command line; returns the process exit code.
pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match execute(cli, out, err) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
