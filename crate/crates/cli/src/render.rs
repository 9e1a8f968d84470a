//! Report envelope and TSV rendering.

use std::time::Duration;

use descentff_core::descent::{Clause, Report};
use serde_json::{json, Map, Value};

use crate::args::Cli;
use crate::{Body, Status};

pub const SCHEMA_VERSION: &str = "1.0";

fn int_value(v: i128) -> Value {
    match i64::try_from(v) {
        Ok(x) => Value::from(x),
        Err(_) => Value::from(v.to_string()),
    }
}

pub fn clause_json(c: &Clause) -> Value {
    json!({
        "clause": c.id,
        "lhs": int_value(c.lhs),
        "relation": c.relation.symbol(),
        "rhs": int_value(c.rhs),
        "pass": c.pass,
        "asserted": c.asserted,
        "extDegreeUsed": c.ext_degree,
    })
}

fn report_status(rep: &Report) -> Status {
    if rep.pass() {
        Status::Pass
    } else {
        Status::Fail
    }
}

pub fn envelope(cli: &Cli, args: &[String], body: Body, elapsed: Option<Duration>) -> (Status, Value) {
    let status = body.status.unwrap_or_else(|| body.report.as_ref().map_or(Status::Pass, report_status));
    let mut v = Map::new();
    v.insert("schemaVersion".into(), SCHEMA_VERSION.into());
    v.insert("command".into(), json!(args));
    v.insert(
        "environment".into(),
        json!({
            "tool": "descentff",
            "version": env!("CARGO_PKG_VERSION"),
            "threads": cli.common.threads,
            "seed": cli.common.seed,
        }),
    );
    v.insert("status".into(), status.name().into());
    if let Some(f) = body.field {
        v.insert("field".into(), f);
    }
    let mut result = body.result;
    if let Some(e) = result.remove("error") {
        v.insert("error".into(), e);
    }
    v.insert("result".into(), Value::Object(result));
    if let Some(rep) = &body.report {
        v.insert("clauses".into(), Value::Array(rep.clauses.iter().map(clause_json).collect()));
        v.insert("notes".into(), json!(rep.notes));
    }
    if let Some(d) = elapsed {
        v.insert("timingsMs".into(), json!({ "total": d.as_millis() as u64 }));
    }
    (status, Value::Object(v))
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Clause rows when present, otherwise one `key value` row per result field.
pub fn tsv(report: &Value) -> String {
    let mut out = String::new();
    out.push_str(&format!("# status\t{}\n", cell(&report["status"])));
    if let Some(e) = report.get("error") {
        out.push_str(&format!("# error\t{}\n", cell(&e["message"])));
    }
    if let Some(f) = report.get("field") {
        out.push_str(&format!("# extDegreeUsed\t{}\n", cell(&f["extDegreeUsed"])));
    }
    if let Some(Value::Array(cl)) = report.get("clauses") {
        out.push_str("clause\tlhs\trelation\trhs\tpass\tasserted\textDegreeUsed\n");
        for c in cl {
            let row: Vec<String> =
                ["clause", "lhs", "relation", "rhs", "pass", "asserted", "extDegreeUsed"].iter().map(|k| cell(&c[*k])).collect();
            out.push_str(&row.join("\t"));
            out.push('\n');
        }
    } else if let Some(Value::Array(hits)) = report["result"].get("hitList") {
        out.push_str("x\ty\tc\tcount\th\thhat\n");
        for h in hits {
            let row: Vec<String> = ["x", "y", "c", "count", "naive", "canonical"].iter().map(|k| cell(&h[*k])).collect();
            out.push_str(&row.join("\t"));
            out.push('\n');
        }
    } else if let Some(Value::Object(r)) = report.get("result") {
        for (k, v) in r {
            out.push_str(&format!("{k}\t{}\n", cell(v)));
        }
    }
    out
}
