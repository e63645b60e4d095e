//! The `nilpotent` command line: parse argv, dispatch, emit a JSON report.
//!
//! Every invocation produces one report object with sorted keys:
//!
//! ```text
//! {
//!   "certificates": [...],
//!   "error": {"name": "...", "message": "..."},   (only on failure)
//!   "exit_code": 0 | 1 | 2,
//!   "inputs": {...},
//!   "result": ...,
//!   "status": "pass" | "fail" | "error" | "usage_error",
//!   "verb": "weil.normalize"
//! }
//! ```
//!
//! Exit code 0 means the verb ran and its checks passed, 1 a domain failure
//! (a failed certificate or a structured kernel error), 2 a usage error.

pub mod args;
mod verbs;

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::Parser;
use serde_json::{json, Value};

pub use args::Cli;

use crate::error::Error;

/// Failure raised while running a verb.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Domain(Error),
    Io(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Domain(e)
    }
}

impl CliError {
    fn name(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "UsageError",
            CliError::Domain(e) => e.name(),
            CliError::Io(_) => "IoFailure",
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Usage(m) | CliError::Io(m) => m.clone(),
            CliError::Domain(e) => e.to_string(),
        }
    }

    fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}

/// What a verb hands back on success.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub result: Value,
    pub certificates: Vec<Value>,
    pub pass: bool,
}

impl Outcome {
    pub fn pass(result: Value) -> Self {
        Outcome { result, certificates: Vec::new(), pass: true }
    }
}

/// A finished report and where it should go.
#[derive(Debug, Clone)]
pub struct Execution {
    pub report: Value,
    pub exit_code: i32,
    pub out: Option<PathBuf>,
    /// Help or version text requested on the command line.
    pub help: Option<String>,
}

/// Parse and run without touching standard output or the file system
/// (input files are still read).
pub fn execute<I, T>(argv: I) -> Execution
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                return Execution { report: Value::Null, exit_code: 0, out: None, help: Some(e.to_string()) };
            }
            let text = e.render().to_string();
            let synopsis = text
                .lines()
                .find(|l| l.starts_with("Usage:"))
                .unwrap_or("Usage: nilpotent <GROUP> <VERB> [OPTIONS]")
                .to_string();
            let message = text.lines().next().unwrap_or_default().trim_start_matches("error: ").to_string();
            let report = json!({
                "verb": Value::Null,
                "inputs": Value::Null,
                "result": Value::Null,
                "certificates": [],
                "status": "usage_error",
                "exit_code": 2,
                "error": {"name": "UsageError", "message": message, "synopsis": synopsis},
            });
            return Execution { report, exit_code: 2, out: None, help: None };
        }
    };
    let (verb, inputs) = verbs::describe(&cli);
    let out = cli.out.clone();
    let (status, code, result, certificates, error) = match verbs::dispatch(&cli) {
        Ok(o) if o.pass => ("pass", 0, o.result, o.certificates, None),
        Ok(o) => ("fail", 1, o.result, o.certificates, None),
        Err(e) => {
            let status = if matches!(e, CliError::Usage(_)) { "usage_error" } else { "error" };
            let err = json!({"name": e.name(), "message": e.message()});
            (status, e.exit_code(), Value::Null, Vec::new(), Some(err))
        }
    };
    let mut report = json!({
        "verb": verb,
        "inputs": inputs,
        "result": result,
        "certificates": certificates,
        "status": status,
        "exit_code": code,
    });
    if let Some(err) = error {
        report["error"] = err;
    }
    Execution { report, exit_code: code, out, help: None }
}

/// Bit-stable rendering: sorted keys, two-space indentation, trailing newline.
pub fn render(report: &Value) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("JSON values always serialize");
    s.push('\n');
    s
}

/// Write the rendered report to `target`, or to standard output.
pub fn emit(report: &Value, target: Option<&Path>) -> Result<(), CliError> {
    let text = render(report);
    match target {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display()))),
        None => {
            use std::io::Write;
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| CliError::Io(format!("cannot write to standard output: {e}")))
        }
    }
}

/// Entry point for the binary; returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let ex = execute(argv);
    if let Some(help) = ex.help {
        print!("{help}");
        return 0;
    }
    if ex.exit_code == 2 {
        if let Some(msg) = ex.report["error"]["message"].as_str() {
            eprintln!("error: {msg}");
        }
    }
    match emit(&ex.report, ex.out.as_deref()) {
        Ok(()) => ex.exit_code,
        Err(e) => {
            let report = json!({
                "verb": ex.report["verb"],
                "inputs": ex.report["inputs"],
                "result": Value::Null,
                "certificates": [],
                "status": "error",
                "exit_code": 1,
                "error": {"name": e.name(), "message": e.message()},
            });
            let _ = emit(&report, None);
            1
        }
    }
}
