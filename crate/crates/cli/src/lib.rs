//! Front end for `descentff-core`: argument parsing, field stabilization,
//! report rendering and the batch harness.

pub mod args;
mod batch;
mod commands;
mod field;
mod render;

use std::time::Instant;

use clap::Parser;
use serde_json::{json, Map, Value};

use args::{Cli, Format};
pub use render::SCHEMA_VERSION;

/// What a run printed and how it ended.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
    pub report: Value,
}

/// Verdict of a single command.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Error,
}

impl Status {
    pub fn code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Error => 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Error => "ERROR",
        }
    }
}

/// The body a command produces before it is wrapped in the envelope.
pub(crate) struct Body {
    pub field: Option<Value>,
    pub result: Map<String, Value>,
    pub report: Option<descentff_core::descent::Report>,
    pub status: Option<Status>,
}

impl Body {
    pub fn new() -> Body {
        Body { field: None, result: Map::new(), report: None, status: None }
    }

    pub fn set(&mut self, key: &str, v: impl Into<Value>) {
        self.result.insert(key.into(), v.into());
    }
}

/// Runs the command line `argv` (including the program name).
pub fn run<S: AsRef<str>>(argv: &[S]) -> Outcome {
    let argv: Vec<String> = argv.iter().map(|s| s.as_ref().to_string()).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let (stdout, stderr) = if code == 0 { (text, String::new()) } else { (String::new(), text) };
            return Outcome { code, stdout, stderr, report: Value::Null };
        }
    };
    let t0 = Instant::now();
    let body = commands::dispatch(&cli);
    let elapsed = t0.elapsed();
    let (status, report) = render::envelope(&cli, &argv[1..], body, cli.common.timings.then_some(elapsed));
    let stdout = match cli.common.format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&report).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Tsv => render::tsv(&report),
    };
    let stderr = match report.get("error") {
        Some(Value::Object(e)) => format!("error: {}\n", e.get("message").and_then(Value::as_str).unwrap_or("")),
        _ => String::new(),
    };
    Outcome { code: status.code(), stdout, stderr, report }
}

pub(crate) fn error_body(e: impl std::fmt::Display, kind: &str) -> Body {
    let mut b = Body::new();
    b.status = Some(Status::Error);
    b.result.insert("error".into(), json!({ "kind": kind, "message": e.to_string() }));
    b
}
