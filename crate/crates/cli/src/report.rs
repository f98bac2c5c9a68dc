//! Command reports: a command echo, entries sorted by name, and a summary.

use std::fmt::Write;

use graded_morita::{Status, ValidationReport};
use serde_json::{json, Value};

#[derive(Clone, Debug, PartialEq)]
pub struct Entry {
    pub name: String,
    pub anchor: String,
    pub status: Status,
    pub witness: Value,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub command: Vec<String>,
    pub entries: Vec<Entry>,
    pub result: Option<Value>,
}

impl Report {
    pub fn new(command: Vec<String>) -> Report {
        Report {
            command,
            entries: Vec::new(),
            result: None,
        }
    }

    pub fn push(&mut self, name: impl Into<String>, anchor: impl Into<String>, status: Status, witness: Value) {
        self.entries.push(Entry {
            name: name.into(),
            anchor: anchor.into(),
            status,
            witness,
        });
    }

    pub fn absorb(&mut self, prefix: &str, report: &ValidationReport) {
        for c in report.checks() {
            let name = if prefix.is_empty() {
                c.axiom.clone()
            } else {
                format!("{prefix}.{}", c.axiom)
            };
            self.push(name, c.law.clone(), c.status, c.witness.clone());
        }
    }

    /// Sorts entries by name; stable, so repeated names keep insertion order.
    pub fn finish(mut self) -> Report {
        self.entries.sort_by(|a, b| a.name.cmp(&b.name));
        self
    }

    pub fn failed(&self) -> usize {
        self.entries.iter().filter(|e| e.status == Status::Fail).count()
    }

    pub fn is_pass(&self) -> bool {
        self.failed() == 0
    }

    pub fn exit_code(&self) -> i32 {
        if self.is_pass() {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> Value {
        let entries: Vec<Value> = self
            .entries
            .iter()
            .map(|e| json!({"name": e.name, "anchor": e.anchor, "status": e.status, "witness": e.witness}))
            .collect();
        let mut out = json!({
            "command": self.command,
            "entries": entries,
            "summary": {
                "checks": self.entries.len(),
                "failed": self.failed(),
                "status": if self.is_pass() { "pass" } else { "fail" },
            },
        });
        if let Some(r) = &self.result {
            out["result"] = r.clone();
        }
        out
    }

    pub fn render_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("JSON values serialize") + "\n"
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "$ gmorita {}", self.command.join(" "));
        let width = self.entries.iter().map(|e| e.name.chars().count()).max().unwrap_or(0);
        for e in &self.entries {
            let status = match e.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
            };
            let pad = width - e.name.chars().count();
            let _ = write!(out, "{status}  {}{}", e.name, " ".repeat(pad));
            if !e.anchor.is_empty() {
                let _ = write!(out, "  {}", e.anchor);
            }
            out.push('\n');
            if e.status == Status::Fail && !e.witness.is_null() {
                let _ = writeln!(out, "      witness: {}", e.witness);
            }
        }
        if let Some(r) = &self.result {
            let _ = writeln!(out, "result: {}", serde_json::to_string_pretty(r).expect("JSON values serialize"));
        }
        let _ = writeln!(
            out,
            "{}: {} checks, {} failed",
            if self.is_pass() { "pass" } else { "fail" },
            self.entries.len(),
            self.failed()
        );
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn entries_sort_and_summarize() {
        let mut r = Report::new(vec!["validate".into()]);
        r.push("b", "", Status::Pass, Value::Null);
        r.push("a", "x = y", Status::Fail, json!({"x": 1}));
        let r = r.finish();
        assert_eq!(r.entries[0].name, "a");
        assert_eq!(r.exit_code(), 1);
        let v = r.to_json();
        assert_eq!(v["summary"]["failed"], 1);
        assert_eq!(v["entries"][0]["status"], "fail");
        assert!(r.render_text().contains("witness: {\"x\":1}"));
    }
}
