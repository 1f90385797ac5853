use serde_json::{Map, Value};

use crate::{EXIT_OK, EXIT_VIOLATION};

/// An ordered list of named values, printed as `key: value` lines or as one
/// JSON object.
#[derive(Debug, Clone, Default)]
pub struct Report {
    fields: Map<String, Value>,
    violated: bool,
    /// Replaces the `key: value` lines in text mode.
    text: Option<String>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn field(mut self, key: impl Into<String>, value: impl Into<Value>) -> Self {
        self.fields.insert(key.into(), value.into());
        self
    }

    pub fn push(&mut self, key: impl Into<String>, value: impl Into<Value>) {
        self.fields.insert(key.into(), value.into());
    }

    /// Marks the report as describing a violated property (exit status 1).
    pub fn violated(mut self, violated: bool) -> Self {
        self.violated |= violated;
        self
    }

    pub fn text(mut self, text: impl Into<String>) -> Self {
        self.text = Some(text.into());
        self
    }

    pub fn code(&self) -> i32 {
        if self.violated {
            EXIT_VIOLATION
        } else {
            EXIT_OK
        }
    }

    pub fn render(&self, json: bool) -> String {
        if json {
            let mut s = serde_json::to_string_pretty(&Value::Object(self.fields.clone()))
                .expect("values serialize");
            s.push('\n');
            return s;
        }
        if let Some(t) = &self.text {
            let mut t = t.clone();
            if !t.ends_with('\n') {
                t.push('\n');
            }
            return t;
        }
        self.fields
            .iter()
            .map(|(k, v)| match inline(v) {
                s if s.is_empty() => format!("{k}:\n"),
                s => format!("{k}: {s}\n"),
            })
            .collect()
    }
}

fn inline(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(xs) if xs.iter().all(is_scalar) => {
            xs.iter().map(inline).collect::<Vec<_>>().join(", ")
        }
        Value::Object(m) if m.values().all(is_scalar) => m
            .iter()
            .map(|(k, v)| format!("{k}={}", inline(v)))
            .collect::<Vec<_>>()
            .join(" "),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

fn is_scalar(v: &Value) -> bool {
    !matches!(v, Value::Array(_) | Value::Object(_))
}
