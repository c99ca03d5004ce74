//! `hecke`: unitarity verdicts for spherical parameters, string
//! decompositions, region lookups, table verification runs and SVG plots.
//!
//! Every command writes JSON lines to stdout (`--pretty` switches to a plain
//! text layout). Exit codes: 0 ok, 1 verification failure, 2 failed
//! precondition, 3 parse error.

mod commands;
mod plot;
mod verify;

use clap::{Parser, Subcommand, ValueEnum};
use hecke_core::Error;
use serde_json::Value;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(name = "hecke", version, about = "Unitarity of spherical modules of graded affine Hecke algebras")]
struct Cli {
    /// Human-readable output instead of JSON lines.
    #[arg(long, global = true)]
    pretty: bool,
    /// Seed for any sampling.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Operator,
    Strings,
    Both,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Unitarity verdict for a spherical parameter.
    Unitary {
        #[arg(long = "type")]
        cartan_type: String,
        #[arg(long)]
        rank: usize,
        /// Comma separated rationals in ambient coordinates.
        #[arg(long, allow_hyphen_values = true)]
        chi: String,
        #[arg(long, value_enum, default_value_t = MethodArg::Operator)]
        method: MethodArg,
        /// Sign character as a string of `+`/`-`; runs the extended operator
        /// of the good-root subsystem with `--chi` as `ν`.
        #[arg(long, allow_hyphen_values = true)]
        delta: Option<String>,
        /// Run the float prefilter before the exact signature.
        #[arg(long)]
        prefilter: bool,
        /// Also check that the relevant W-types decide the verdict.
        #[arg(long)]
        relevant: bool,
    },
    /// String decomposition of a classical parameter.
    Strings {
        #[arg(long = "type")]
        cartan_type: String,
        #[arg(long)]
        rank: usize,
        #[arg(long, allow_hyphen_values = true)]
        chi: String,
    },
    /// Region membership: zero-orbit regions, table rows, or attachment.
    Region {
        /// G2, F4, E6, E7, E8, or a classical table group such as B4.
        #[arg(long)]
        group: String,
        /// Table row label; with `--nu`, evaluates that row's region.
        #[arg(long)]
        orbit: Option<String>,
        /// Row parameters, or zero-orbit coordinates when no orbit is given.
        #[arg(long, allow_hyphen_values = true, conflicts_with = "chi")]
        nu: Option<String>,
        /// Ambient parameter; attached to a table row (G2, F4) or tested
        /// against the zero-orbit regions (E6, E7, E8).
        #[arg(long, allow_hyphen_values = true)]
        chi: Option<String>,
    },
    /// Verify a unitarity table against the strings method and the operator.
    VerifyTable {
        #[arg(long)]
        table: String,
        /// Wall-clock budget in seconds; rows not reached are reported.
        #[arg(long, default_value_t = 600)]
        budget: u64,
        /// Extra random grid points per exceptional row, drawn with `--seed`.
        #[arg(long, default_value_t = 0)]
        samples: usize,
    },
    /// SVG plot of the spherical unitary parameters of a rank two type.
    Plot {
        #[arg(long = "type")]
        cartan_type: String,
        /// Grid step, e.g. 1/8.
        #[arg(long, default_value = "1/8")]
        grid: String,
        /// Largest first coordinate.
        #[arg(long, default_value = "3")]
        max: String,
        #[arg(long)]
        out: PathBuf,
    },
}

/// Outcome of a command: records to print and whether a check failed.
pub struct Output {
    pub records: Vec<Value>,
    pub failed: bool,
}

impl Output {
    pub fn ok(records: Vec<Value>) -> Self {
        Output { records, failed: false }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse(_) => 3,
        _ => 2,
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Parse(_) => "parse",
        Error::NotHermitian => "not_hermitian",
        Error::CapExceeded { .. } => "cap_exceeded",
        Error::Unsupported(_) => "unsupported",
        Error::ZeroNormalization => "zero_normalization",
        Error::Pole => "pole",
        Error::VeryEvenOrbit => "very_even_orbit",
        Error::DimensionMismatch { .. } => "dimension_mismatch",
        Error::UnknownOrbit(_) => "unknown_orbit",
        Error::UnknownLabel(_) => "unknown_label",
        Error::Data(_) => "data",
        _ => "precondition",
    }
}

fn run(cli: &Cli) -> hecke_core::Result<Output> {
    match &cli.command {
        Command::Unitary { cartan_type, rank, chi, method, delta, prefilter, relevant } => {
            commands::unitary(cartan_type, *rank, chi, *method, delta.as_deref(), *prefilter, *relevant)
        }
        Command::Strings { cartan_type, rank, chi } => commands::strings(cartan_type, *rank, chi),
        Command::Region { group, orbit, nu, chi } => commands::region(group, orbit.as_deref(), nu.as_deref(), chi.as_deref()),
        Command::VerifyTable { table, budget, samples } => verify::verify_table(table, *budget, *samples, cli.seed),
        Command::Plot { cartan_type, grid, max, out } => plot::plot(cartan_type, grid, max, out),
    }
}

fn pretty_line(v: &Value) -> String {
    match v {
        Value::Object(m) => m
            .iter()
            .map(|(k, x)| match x {
                Value::String(s) => format!("{k}: {s}"),
                Value::Object(_) | Value::Array(_) => format!("{k}: {}", serde_json::to_string(x).unwrap_or_default()),
                other => format!("{k}: {other}"),
            })
            .collect::<Vec<_>>()
            .join("\n"),
        other => other.to_string(),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => 3,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match run(&cli) {
        Ok(o) => {
            for r in &o.records {
                let line = if cli.pretty { format!("{}\n", pretty_line(r)) } else { r.to_string() };
                let _ = writeln!(out, "{line}");
            }
            ExitCode::from(u8::from(o.failed))
        }
        Err(e) => {
            let rec = serde_json::json!({ "error": error_kind(&e), "message": e.to_string() });
            eprintln!("{rec}");
            ExitCode::from(exit_code(&e))
        }
    }
}
