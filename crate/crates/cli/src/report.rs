use std::io::Write;
use std::time::Duration;

use serde_json::{json, Value};

pub struct Outcome {
    pub inputs: Value,
    pub result: Value,
    pub witnesses: Value,
    /// Exit with status 2: the question has no answer for these inputs.
    pub not_applicable: bool,
}

impl Outcome {
    pub fn new(inputs: Value, result: Value, witnesses: Value) -> Self {
        Outcome {
            inputs,
            result,
            witnesses,
            not_applicable: false,
        }
    }
}

pub struct Report {
    pub command: String,
    pub inputs: Value,
    pub result: Value,
    pub witnesses: Value,
    pub elapsed: Option<Duration>,
}

impl Report {
    pub fn emit(&self) {
        let timings = match self.elapsed {
            Some(d) => json!({ "total_ms": d.as_secs_f64() * 1e3 }),
            None => Value::Null,
        };
        // serde_json maps keep keys sorted
        let out = json!({
            "command": self.command,
            "inputs": self.inputs,
            "result": self.result,
            "witnesses": self.witnesses,
            "timings": timings,
        });
        write_stdout(&out);
        let _ = write!(std::io::stderr(), "{}", table(&self.command, &self.result));
    }
}

pub fn emit_error(command: &str, err: &semistab::Error) {
    let out = json!({ "command": command, "error": err.to_string() });
    write_stdout(&out);
    let _ = writeln!(std::io::stderr(), "error: {err}");
}

/// A closed pipe downstream is not an error of ours.
fn write_stdout(v: &Value) {
    let text = serde_json::to_string_pretty(v).expect("report serializes");
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn table(command: &str, result: &Value) -> String {
    let mut rows: Vec<(String, String)> = Vec::new();
    match result {
        Value::Object(map) => {
            for (k, v) in map {
                rows.push((k.clone(), cell(v)));
            }
        }
        other => rows.push(("result".into(), cell(other))),
    }
    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    let mut s = format!("{command}\n");
    for (k, v) in rows {
        s.push_str(&format!("  {k:<width$}  {v}\n"));
    }
    s
}

fn cell(v: &Value) -> String {
    let s = match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    };
    if s.chars().count() > 96 {
        let head: String = s.chars().take(93).collect();
        format!("{head}...")
    } else {
        s
    }
}
