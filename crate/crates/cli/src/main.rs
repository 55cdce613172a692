//! `coxassoc`: build permutahedra, associahedra and Cambrian lattices of
//! finite Coxeter groups, and verify their structural claims.
//!
//! Exit codes: 0 success, 1 I/O or internal error, 2 invalid configuration,
//! 3 unmet precondition (non-generic basepoint, non-crystallographic group, ...),
//! 4 a checked claim failed, 5 no exact coordinate field for the group.

mod config;
mod export;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use coxeter_assoc::Error;
use config::{ArithMode, Format, Object, RunConfig};
use verify::Claim;

#[derive(Parser)]
#[command(name = "coxassoc", version, about = "Permutahedra and generalized associahedra of finite Coxeter groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Construct an object and write it out.
    Build {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum)]
        object: Object,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Check claims and write a JSON report.
    Verify {
        #[command(flatten)]
        common: Common,
        /// Claims to check; repeatable.
        #[arg(long, value_enum, conflicts_with = "all")]
        claim: Vec<Claim>,
        /// Check every claim.
        #[arg(long)]
        all: bool,
    },
}

#[derive(Args)]
struct Common {
    /// `A<n>`, `B<n>`, `I2:<m>`, `H3`, or products joined by `x` such as `I2:4xA1`.
    #[arg(long)]
    group: String,
    /// Coxeter element as a word in the generator names, e.g. `t1t2t3` or `ts`.
    #[arg(long)]
    coxeter: Option<String>,
    /// `default`, `delta:x,y,...` (simple-root coordinates) or `ambient:x,y,...`.
    #[arg(long, default_value = "default")]
    basepoint: String,
    #[arg(long, value_enum, default_value = "auto")]
    arith: ArithMode,
    /// Output file; standard output when absent.
    #[arg(long)]
    output: Option<PathBuf>,
}

impl Common {
    fn config(&self) -> Result<RunConfig, Error> {
        RunConfig::new(&self.group, self.coxeter.clone(), &self.basepoint, self.arith)
    }
}

enum Failure {
    Lib(Error),
    Io(std::io::Error),
    Claims(usize),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::InexactField(_) => 5,
        Error::Parse(_) | Error::UnsupportedType(_) | Error::InvalidCoxeterElement(_) | Error::DimensionMismatch { .. } => 2,
        e if verify::is_precondition(e) => 3,
        Error::Invariant(_) | Error::NotSimple(_) => 4,
        _ => 1,
    }
}

fn write_out(path: Option<&PathBuf>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(Failure::Io),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Build { common, object, format } => {
            let text = export::render(&common.config()?, object, format)?;
            write_out(common.output.as_ref(), &text)
        }
        Command::Verify { common, claim, all } => {
            let cfg = common.config()?;
            let strict = !all && !claim.is_empty();
            let claims = if strict { claim } else { Claim::all() };
            let report = verify::run(&cfg, &claims, strict)?;
            let text = serde_json::to_string_pretty(&report.json).expect("json value") + "\n";
            write_out(common.output.as_ref(), &text)?;
            if report.failed > 0 {
                return Err(Failure::Claims(report.failed));
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(Failure::Claims(n)) => {
            eprintln!("{n} claim check(s) failed");
            ExitCode::from(4)
        }
    }
}
