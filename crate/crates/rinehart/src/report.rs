//! Report model and its JSON and text renderings.
//!
//! Top-level keys, in order: `tool`, `version`, `command`, `input_digest`,
//! `seed`, `verdict`, `checks`, and `timing` when requested. Each check
//! carries `name`, `verdict`, `details` and `witness` (`null` on pass).
//! The text form is produced from the JSON value.

use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

pub const TOOL: &str = "rinehart";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Verdict {
    Pass,
    Infeasible,
    Fail,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Infeasible => "infeasible",
        }
    }

    pub fn from_ok(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: String,
    pub verdict: Verdict,
    pub details: Map<String, Value>,
    pub witness: Option<Value>,
}

impl Check {
    pub fn new(name: impl Into<String>, verdict: Verdict) -> Self {
        Check {
            name: name.into(),
            verdict,
            details: Map::new(),
            witness: None,
        }
    }

    pub fn detail(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.details.insert(key.to_string(), value.into());
        self
    }

    pub fn witness(mut self, value: Value) -> Self {
        self.witness = Some(value);
        self
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub command: String,
    pub input_digest: String,
    pub seed: u64,
    pub checks: Vec<Check>,
    pub elapsed_ms: Option<u128>,
}

pub fn digest(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

impl Report {
    pub fn new(command: impl Into<String>, input: &[u8], seed: u64) -> Self {
        Report {
            command: command.into(),
            input_digest: digest(input),
            seed,
            checks: Vec::new(),
            elapsed_ms: None,
        }
    }

    /// Worst verdict over all checks; `pass` when there are none.
    pub fn verdict(&self) -> Verdict {
        self.checks.iter().map(|c| c.verdict).max().unwrap_or(Verdict::Pass)
    }

    pub fn exit_code(&self) -> i32 {
        match self.verdict() {
            Verdict::Pass => 0,
            _ => 1,
        }
    }

    pub fn to_json(&self) -> Value {
        let checks: Vec<Value> = self
            .checks
            .iter()
            .map(|c| {
                json!({
                    "name": c.name,
                    "verdict": c.verdict.as_str(),
                    "details": c.details,
                    "witness": c.witness.clone().unwrap_or(Value::Null),
                })
            })
            .collect();
        let mut top = Map::new();
        top.insert("tool".into(), TOOL.into());
        top.insert("version".into(), VERSION.into());
        top.insert("command".into(), self.command.clone().into());
        top.insert("input_digest".into(), format!("sha256:{}", self.input_digest).into());
        top.insert("seed".into(), self.seed.into());
        top.insert("verdict".into(), self.verdict().as_str().into());
        top.insert("checks".into(), checks.into());
        if let Some(ms) = self.elapsed_ms {
            top.insert("timing".into(), json!({ "elapsed_ms": ms as u64 }));
        }
        Value::Object(top)
    }

    pub fn render_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json()).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn render_text(&self) -> String {
        render_text(&self.to_json())
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

fn is_flat(v: &Value) -> bool {
    match v {
        Value::Array(a) => a.iter().all(|x| !x.is_array() && !x.is_object()),
        Value::Object(_) => false,
        _ => true,
    }
}

fn inline(v: &Value) -> String {
    match v {
        Value::Array(a) => format!("[{}]", a.iter().map(scalar).collect::<Vec<_>>().join(", ")),
        other => scalar(other),
    }
}

fn block(out: &mut String, key: &str, v: &Value, indent: usize) {
    let pad = " ".repeat(indent);
    if is_flat(v) {
        out.push_str(&format!("{pad}{key}: {}\n", inline(v)));
        return;
    }
    out.push_str(&format!("{pad}{key}:\n"));
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                block(out, k, x, indent + 2);
            }
        }
        Value::Array(a) => {
            for (i, x) in a.iter().enumerate() {
                block(out, &format!("[{i}]"), x, indent + 2);
            }
        }
        _ => unreachable!("flat values handled above"),
    }
}

/// Human-readable rendering of a report value.
pub fn render_text(report: &Value) -> String {
    let get = |k: &str| report.get(k).map(scalar).unwrap_or_default();
    let mut out = format!(
        "{} {} {}: {}\ninput {}\nseed {}\n",
        get("tool"),
        get("version"),
        get("command"),
        get("verdict"),
        get("input_digest"),
        get("seed")
    );
    if let Some(Value::Array(checks)) = report.get("checks") {
        for c in checks {
            out.push_str(&format!(
                "[{}] {}\n",
                c.get("verdict").map(scalar).unwrap_or_default(),
                c.get("name").map(scalar).unwrap_or_default()
            ));
            if let Some(Value::Object(d)) = c.get("details") {
                for (k, v) in d {
                    block(&mut out, k, v, 4);
                }
            }
            if let Some(w) = c.get("witness").filter(|w| !w.is_null()) {
                block(&mut out, "witness", w, 4);
            }
        }
    }
    if let Some(t) = report.get("timing") {
        block(&mut out, "timing", t, 0);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdict_and_key_order() {
        let mut r = Report::new("check", b"x", 0);
        assert_eq!(r.exit_code(), 0);
        r.checks.push(Check::new("a", Verdict::Pass).detail("n", 3));
        r.checks.push(Check::new("b", Verdict::Infeasible));
        assert_eq!(r.verdict(), Verdict::Infeasible);
        r.checks.push(Check::new("c", Verdict::Fail).witness(json!({"pair": [0, 1]})));
        assert_eq!(r.verdict(), Verdict::Fail);
        assert_eq!(r.exit_code(), 1);
        let keys: Vec<String> = r.to_json().as_object().unwrap().keys().cloned().collect();
        assert_eq!(keys, ["tool", "version", "command", "input_digest", "seed", "verdict", "checks"]);
        let text = r.render_text();
        assert!(text.starts_with("rinehart "));
        assert!(text.contains("[fail] c\n    witness:\n      pair: [0, 1]\n"));
    }
}
