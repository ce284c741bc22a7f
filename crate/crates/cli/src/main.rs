//! `quadmaps <verb> [--file payload.json] [--seed N]`: reads a JSON payload
//! (stdin by default), prints a JSON result.
//!
//! Exit codes: 0 success, 2 malformed input, 3 mathematical refusal,
//! 4 internal defect.

mod commands;
mod payload;

use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use serde_json::json;

use commands::{run, CliError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Verb {
    #[value(name = "qform:analyze")]
    QformAnalyze,
    #[value(name = "qform:witt")]
    QformWitt,
    #[value(name = "qform:isotropic")]
    QformIsotropic,
    #[value(name = "qform:equivalent")]
    QformEquivalent,
    #[value(name = "qform:og")]
    QformOg,
    #[value(name = "map:construct")]
    MapConstruct,
    #[value(name = "map:verify")]
    MapVerify,
    #[value(name = "map:classify")]
    MapClassify,
    #[value(name = "curve:reduce")]
    CurveReduce,
    #[value(name = "curve:conic3")]
    CurveConic3,
    #[value(name = "curve:sympower")]
    CurveSympower,
    #[value(name = "veronese:check")]
    VeroneseCheck,
    #[value(name = "sphere:stereo")]
    SphereStereo,
}

#[derive(Debug, Parser)]
#[command(name = "quadmaps", version, about = "Exact quadratic forms and quadratic maps into quadrics")]
struct Cli {
    verb: Verb,
    /// Read the payload from this file instead of stdin.
    #[arg(long)]
    file: Option<PathBuf>,
    /// Seed for parameter specialization; overrides any seed in the payload.
    #[arg(long)]
    seed: Option<u64>,
}

fn read_payload(file: Option<&PathBuf>) -> Result<String, CliError> {
    let mut text = String::new();
    match file {
        Some(path) => {
            text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Validation(format!("cannot read {}: {e}", path.display())))?
        }
        None => {
            std::io::stdin()
                .read_to_string(&mut text)
                .map_err(|e| CliError::Validation(format!("cannot read stdin: {e}")))?;
        }
    }
    Ok(text)
}

// A closed stdout (e.g. `| head`) is not worth a panic.
fn emit(value: &serde_json::Value) {
    let _ = writeln!(std::io::stdout(), "{value}");
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = read_payload(cli.file.as_ref()).and_then(|text| {
        std::panic::catch_unwind(|| run(cli.verb, &text, cli.seed))
            .unwrap_or_else(|p| {
                let msg = p
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_else(|| "panic".into());
                Err(CliError::Internal(msg))
            })
    });
    match outcome {
        Ok(value) => {
            emit(&value);
            ExitCode::SUCCESS
        }
        Err(e) => {
            let (code, kind, message) = match &e {
                CliError::Validation(m) => (2, "validation".to_string(), m.clone()),
                CliError::Math { kind, message } => (3, kind.clone(), message.clone()),
                CliError::Internal(m) => (4, "internal".to_string(), m.clone()),
            };
            emit(&json!({ "error": { "kind": kind, "message": message } }));
            ExitCode::from(code)
        }
    }
}
