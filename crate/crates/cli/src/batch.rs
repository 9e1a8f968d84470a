//! Manifest runs, executed on a pool of `--threads` workers.

use std::path::Path;

use rayon::prelude::*;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::args::Cli;
use crate::{error_body, Body, Status};

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Manifest {
    runs: Vec<Vec<String>>,
}

fn load(path: &Path) -> anyhow::Result<Manifest> {
    let text = std::fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

pub(crate) fn run(cli: &Cli, path: &Path) -> Body {
    let manifest = match load(path) {
        Ok(m) => m,
        Err(e) => return error_body(format!("malformed manifest {}: {e}", path.display()), "manifest"),
    };
    if manifest.runs.iter().any(|r| r.first().map(String::as_str) == Some("batch")) {
        return error_body("manifests may not nest batch runs", "manifest");
    }
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.common.threads as usize).build() {
        Ok(p) => p,
        Err(e) => return error_body(e, "threads"),
    };
    let seed = cli.common.seed.to_string();
    let outcomes: Vec<(i32, Value)> = pool.install(|| {
        manifest
            .runs
            .par_iter()
            .map(|r| {
                let mut argv = vec!["descentff".to_string(), "--seed".into(), seed.clone(), "--threads".into(), "1".into()];
                argv.extend(r.iter().cloned());
                let o = crate::run(&argv);
                let report = if o.report.is_null() { json!({ "usage": o.stderr.trim() }) } else { o.report };
                (o.code, report)
            })
            .collect()
    });
    let worst = outcomes.iter().map(|(c, _)| *c).max().unwrap_or(0);
    let count = |c: i32| outcomes.iter().filter(|(x, _)| *x == c).count();
    let mut b = Body::new();
    b.status = Some(match worst {
        0 => Status::Pass,
        1 => Status::Fail,
        _ => Status::Error,
    });
    b.set("runs", outcomes.len());
    b.set("passed", count(0));
    b.set("failed", count(1));
    b.set("errors", outcomes.iter().filter(|(c, _)| *c >= 2).count());
    let runs: Vec<Value> = manifest
        .runs
        .iter()
        .zip(outcomes)
        .map(|(argv, (code, report))| json!({ "argv": argv, "exitCode": code, "report": report }))
        .collect();
    b.set("reports", runs);
    b
}
