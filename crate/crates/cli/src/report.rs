//! Command output: one JSON document or plain text.

use clap::ValueEnum;
use serde_json::{json, Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub command: &'static str,
    pub inputs: Map<String, Value>,
    pub results: Map<String, Value>,
    pub epsilon: Option<i32>,
    /// Replaces the generic text rendering when set.
    pub text: Option<String>,
}

impl Report {
    pub fn new(command: &'static str) -> Self {
        Self { command, inputs: Map::new(), results: Map::new(), epsilon: None, text: None }
    }

    pub fn input(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.inputs.insert(key.into(), value.into());
        self
    }

    pub fn result(&mut self, key: &str, value: impl Into<Value>) {
        self.results.insert(key.into(), value.into());
    }

    pub fn to_json(&self) -> Value {
        let mut doc = json!({
            "command": self.command,
            "inputs": self.inputs,
            "results": self.results,
        });
        if let Some(e) = self.epsilon {
            doc["epsilon"] = json!(e);
        }
        doc
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                format!("{}\n", serde_json::to_string_pretty(&self.to_json()).expect("json"))
            }
            Format::Text => self.render_text(),
        }
    }

    fn render_text(&self) -> String {
        if let Some(text) = &self.text {
            return text.clone();
        }
        let mut s = String::new();
        for (key, value) in &self.results {
            match value {
                Value::Array(items) if items.iter().any(Value::is_array) => {
                    s.push_str(&format!("{key}:\n{}", table(items)));
                }
                Value::Array(items) => {
                    let parts: Vec<String> = items.iter().map(scalar).collect();
                    s.push_str(&format!("{key}: {}\n", parts.join(" ")));
                }
                Value::Object(fields) => {
                    s.push_str(&format!("{key}:\n"));
                    for (k, v) in fields {
                        s.push_str(&format!("  {k}: {}\n", scalar(v)));
                    }
                }
                v => s.push_str(&format!("{key}: {}\n", scalar(v))),
            }
        }
        if let Some(e) = self.epsilon {
            s.push_str(&format!("epsilon: {e}\n"));
        }
        s
    }
}

pub fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

/// Right-aligned columns, two-space indent.
pub fn table(rows: &[Value]) -> String {
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| match r {
            Value::Array(items) => items.iter().map(scalar).collect(),
            other => vec![scalar(other)],
        })
        .collect();
    let ncols = cells.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..ncols)
        .map(|c| cells.iter().filter_map(|r| r.get(c)).map(|s| s.chars().count()).max().unwrap_or(0))
        .collect();
    let mut s = String::new();
    for row in &cells {
        let parts: Vec<String> =
            row.iter().enumerate().map(|(c, v)| format!("{v:>w$}", w = widths[c])).collect();
        s.push_str(&format!("  {}\n", parts.join("  ")));
    }
    s
}
