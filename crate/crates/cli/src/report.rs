use serde::Serialize;
use sha2::{Digest, Sha256};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Value {
    Bool(bool),
    Int(i64),
    Text(String),
    List(Vec<String>),
}

impl From<bool> for Value {
    fn from(b: bool) -> Self {
        Value::Bool(b)
    }
}

impl From<i64> for Value {
    fn from(i: i64) -> Self {
        Value::Int(i)
    }
}

impl From<usize> for Value {
    fn from(i: usize) -> Self {
        Value::Int(i as i64)
    }
}

impl From<String> for Value {
    fn from(s: String) -> Self {
        Value::Text(s)
    }
}

impl From<&str> for Value {
    fn from(s: &str) -> Self {
        Value::Text(s.into())
    }
}

impl From<Vec<String>> for Value {
    fn from(v: Vec<String>) -> Self {
        Value::List(v)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Entry {
    pub key: String,
    pub value: Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct Input {
    pub name: String,
    pub sha256: String,
}

/// A hypothesis of a theorem being applied: whether the caller asserted it
/// and whether it was checked (`None`: not checkable here).
#[derive(Clone, Debug, Serialize)]
pub struct Hypothesis {
    pub name: String,
    pub asserted: bool,
    pub verified: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: Vec<Input>,
    pub results: Vec<Entry>,
    pub hypotheses: Vec<Hypothesis>,
    /// False when a check evaluated to a mathematical mismatch.
    pub ok: bool,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Report {
        Report { command: command.into(), inputs: Vec::new(), results: Vec::new(), hypotheses: Vec::new(), ok: true }
    }

    pub fn input(&mut self, name: &str, contents: &str) {
        let digest = Sha256::digest(contents.as_bytes());
        let hex: String = digest.iter().map(|b| format!("{b:02x}")).collect();
        self.inputs.push(Input { name: name.into(), sha256: hex });
    }

    pub fn push(&mut self, key: &str, value: impl Into<Value>) {
        self.results.push(Entry { key: key.into(), value: value.into() });
    }

    /// Record a check; a false value marks the report as a mismatch.
    pub fn check(&mut self, key: &str, holds: bool) {
        self.ok &= holds;
        self.push(key, holds);
    }

    pub fn hypothesis(&mut self, name: &str, asserted: bool, verified: Option<bool>) {
        if asserted && verified == Some(false) {
            self.ok = false;
        }
        self.hypotheses.push(Hypothesis { name: name.into(), asserted, verified });
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("command: {}\n", self.command);
        for i in &self.inputs {
            out.push_str(&format!("input: {} sha256={}\n", i.name, i.sha256));
        }
        for e in &self.results {
            match &e.value {
                Value::Bool(b) => out.push_str(&format!("{}: {}\n", e.key, if *b { "yes" } else { "no" })),
                Value::Int(i) => out.push_str(&format!("{}: {i}\n", e.key)),
                Value::Text(s) => out.push_str(&format!("{}: {s}\n", e.key)),
                Value::List(items) => {
                    out.push_str(&format!("{}: [{}]\n", e.key, items.len()));
                    for it in items {
                        out.push_str(&format!("  {it}\n"));
                    }
                }
            }
        }
        for h in &self.hypotheses {
            let verified = match h.verified {
                Some(true) => "verified",
                Some(false) => "FAILS",
                None => "not checked",
            };
            out.push_str(&format!("hypothesis {}: {}, {verified}\n", h.name, if h.asserted { "asserted" } else { "not asserted" }));
        }
        out.push_str(&format!("status: {}\n", if self.ok { "ok" } else { "mismatch" }));
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize") + "\n"
    }
}
