//! Uniform command output: a JSON document or a few aligned text lines.

use serde::Serialize;
use serde_json::{Map, Value};

use crate::parse::ParseError;

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Check {
    pub fn new(name: impl Into<String>, pass: bool) -> Self {
        Check { name: name.into(), pass, detail: None }
    }

    pub fn with(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub field: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub result: Value,
    pub checks: Vec<Check>,
    pub ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub duration_ms: Option<f64>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            command: command.into(),
            field: None,
            seed: None,
            result: Value::Object(Map::new()),
            checks: Vec::new(),
            ok: true,
            duration_ms: None,
        }
    }

    pub fn field(mut self, name: String) -> Self {
        self.field = Some(name);
        self
    }

    pub fn put(&mut self, key: &str, v: impl Into<Value>) {
        if let Value::Object(m) = &mut self.result {
            m.insert(key.into(), v.into());
        }
    }

    pub fn check(&mut self, c: Check) {
        self.ok &= c.pass;
        self.checks.push(c);
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data")
    }

    pub fn to_text(&self) -> String {
        let mut out = vec![self.command.clone()];
        if let Some(f) = &self.field {
            out.push(format!("  field: {f}"));
        }
        if let Some(s) = self.seed {
            out.push(format!("  seed: {s}"));
        }
        if let Value::Object(m) = &self.result {
            for (k, v) in m {
                out.push(format!("  {k}: {}", text_value(v)));
            }
        }
        for c in &self.checks {
            let mark = if c.pass { "pass" } else { "FAIL" };
            match &c.detail {
                Some(d) => out.push(format!("  [{mark}] {} ({d})", c.name)),
                None => out.push(format!("  [{mark}] {}", c.name)),
            }
        }
        if let Some(ms) = self.duration_ms {
            out.push(format!("  time: {ms:.1} ms"));
        }
        out.join("\n")
    }
}

fn text_value(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(xs) if xs.iter().all(|x| !x.is_object() && !x.is_array()) => {
            let parts: Vec<String> = xs.iter().map(text_value).collect();
            format!("[{}]", parts.join(", "))
        }
        other => other.to_string(),
    }
}

/// Failure before any check could run: bad input or an undefined operation.
#[derive(Debug, thiserror::Error)]
pub enum WbError {
    #[error("{0}")]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Math(#[from] deligne_core::Error),
    #[error("{0}")]
    Usage(String),
}

impl WbError {
    pub fn kind(&self) -> &'static str {
        match self {
            WbError::Parse(_) => "parse",
            WbError::Math(_) => "math",
            WbError::Usage(_) => "usage",
        }
    }

    pub fn to_json(&self) -> String {
        let mut e = Map::new();
        e.insert("kind".into(), self.kind().into());
        let msg = match self {
            WbError::Parse(p) => p.msg.clone(),
            other => other.to_string(),
        };
        e.insert("message".into(), msg.into());
        if let WbError::Parse(ParseError { pos: Some(p), .. }) = self {
            e.insert("column".into(), (p + 1).into());
        }
        let mut top = Map::new();
        top.insert("error".into(), Value::Object(e));
        serde_json::to_string_pretty(&Value::Object(top)).expect("plain data")
    }
}

pub type WbResult<T> = std::result::Result<T, WbError>;
