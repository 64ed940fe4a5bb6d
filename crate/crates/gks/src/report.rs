//! Check records and their JSON and text renderings.

use serde::Serialize;
use serde_json::Value;

/// One verified claim. It passes when what was observed equals what the golden data expects.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub id: String,
    pub expect: bool,
    pub holds: bool,
    pub pass: bool,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub note: String,
    #[serde(skip_serializing_if = "Value::is_null")]
    pub data: Value,
}

impl Check {
    pub fn new(id: impl Into<String>, expect: bool, holds: bool) -> Check {
        Check { id: id.into(), expect, holds, pass: expect == holds, note: String::new(), data: Value::Null }
    }

    /// A claim expected to hold.
    pub fn holds(id: impl Into<String>, holds: bool) -> Check {
        Check::new(id, true, holds)
    }

    pub fn note(mut self, s: impl Into<String>) -> Check {
        self.note = s.into();
        self
    }

    pub fn data(mut self, v: Value) -> Check {
        self.data = v;
        self
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub pass: bool,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn new(suite: &str, mut checks: Vec<Check>) -> SuiteReport {
        checks.sort_by(|a, b| a.id.cmp(&b.id));
        SuiteReport { suite: suite.into(), pass: checks.iter().all(|c| c.pass), checks }
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
}

/// `{"schema": 1, "command": ..., "pass": ..., ...payload}`.
pub fn envelope(command: &str, pass: bool, payload: Value) -> Value {
    let mut m = serde_json::Map::new();
    m.insert("schema".into(), 1.into());
    m.insert("command".into(), command.into());
    m.insert("pass".into(), pass.into());
    if let Value::Object(p) = payload {
        m.extend(p);
    }
    Value::Object(m)
}

pub fn render_suites(suites: &[SuiteReport]) -> String {
    let mut out = String::new();
    for s in suites {
        let n = s.checks.len();
        let ok = s.checks.iter().filter(|c| c.pass).count();
        out.push_str(&format!("== {} : {ok}/{n} {}\n", s.suite, if s.pass { "ok" } else { "FAILED" }));
        for c in &s.checks {
            let tag = match (c.pass, c.expect) {
                (true, true) => "PASS ",
                (true, false) => "XFAIL",
                (false, _) => "FAIL ",
            };
            out.push_str(&format!("{tag} {}", c.id));
            if !c.note.is_empty() {
                out.push_str(&format!("  ({})", c.note));
            }
            out.push('\n');
        }
    }
    out
}
