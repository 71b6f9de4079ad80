//! Report envelope, exit codes, JSON and CSV rendering, table diffs.

use serde_json::{json, Value};

use modsuper::error::Error;

use crate::config::Format;

/// Version of the report layout described in the README.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Pass,
    Violation,
    Unknown,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::Violation => 2,
            Status::Unknown => 3,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Violation => "violation",
            Status::Unknown => "unknown",
        }
    }

    pub fn from_checks(ok: bool) -> Status {
        if ok {
            Status::Pass
        } else {
            Status::Violation
        }
    }
}

pub fn error_exit_code(e: &Error) -> i32 {
    match e {
        Error::Violation(_) | Error::Dimension(_) => 2,
        Error::Unknown(_) => 3,
        Error::Usage(_) | Error::Format(_) | Error::Precondition(_) | Error::Unsupported(_) | Error::Io(_) => 1,
    }
}

#[derive(Clone, Debug)]
pub struct Report {
    pub command: String,
    pub config: Value,
    pub result: Value,
    pub status: Status,
}

impl Report {
    pub fn to_value(&self) -> Value {
        json!({
            "schema_version": SCHEMA_VERSION,
            "command": self.command,
            "config": self.config,
            "result": self.result,
            "status": self.status.name(),
        })
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.to_value()).expect("report serializes");
                s.push('\n');
                s
            }
            Format::Csv => to_csv(&self.to_value()),
        }
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    let join = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                flatten(&join(k), x, out);
            }
        }
        Value::Array(items) => {
            if items.is_empty() {
                out.push((prefix.to_string(), String::new()));
            }
            for (i, x) in items.iter().enumerate() {
                flatten(&join(&i.to_string()), x, out);
            }
        }
        Value::String(s) => out.push((prefix.to_string(), s.clone())),
        Value::Null => out.push((prefix.to_string(), String::new())),
        other => out.push((prefix.to_string(), other.to_string())),
    }
}

/// One `path,value` row per JSON leaf, in the JSON key order.
pub fn to_csv(v: &Value) -> String {
    let mut rows = Vec::new();
    flatten("", v, &mut rows);
    let mut s = String::from("path,value\n");
    for (k, x) in rows {
        s.push_str(&csv_field(&k));
        s.push(',');
        s.push_str(&csv_field(&x));
        s.push('\n');
    }
    s
}

/// Paths where `observed` differs from `expected`, with both values.
pub fn diff(expected: &Value, observed: &Value) -> Vec<String> {
    fn go(path: &str, e: &Value, o: &Value, out: &mut Vec<String>) {
        match (e, o) {
            (Value::Object(a), Value::Object(b)) => {
                for (k, x) in a {
                    let p = format!("{path}.{k}");
                    match b.get(k) {
                        Some(y) => go(&p, x, y, out),
                        None => out.push(format!("{p}: expected {x}, missing")),
                    }
                }
            }
            (Value::Array(a), Value::Array(b)) if a.len() == b.len() => {
                for (i, (x, y)) in a.iter().zip(b).enumerate() {
                    go(&format!("{path}[{i}]"), x, y, out);
                }
            }
            _ if e != o => out.push(format!("{path}: expected {e}, got {o}")),
            _ => {}
        }
    }
    let mut out = Vec::new();
    go("", expected, observed, &mut out);
    out
}
