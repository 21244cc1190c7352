use std::fmt;

use serde_json::{Map, Value};

use crate::Format;

/// Bad input; reported on stderr with exit code 2.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(s) => f.write_str(s),
        }
    }
}

impl<E: std::error::Error> From<E> for CliError {
    fn from(e: E) -> Self {
        CliError::Usage(e.to_string())
    }
}

pub fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

pub struct Output {
    pub text: String,
    pub json: Map<String, Value>,
    /// False when a verification check failed.
    pub ok: bool,
}

impl Output {
    pub fn new(schema: &str, text: String, json: Value) -> Self {
        let mut map = Map::new();
        map.insert("schema".into(), Value::String(format!("cvform.{schema}/1")));
        if let Value::Object(o) = json {
            map.extend(o);
        }
        Output { text, json: map, ok: true }
    }

    pub fn with_status(mut self, ok: bool) -> Self {
        self.ok = ok;
        self
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => {
                let mut s = self.text.clone();
                if !s.ends_with('\n') {
                    s.push('\n');
                }
                s
            }
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&Value::Object(self.json.clone()))
                    .expect("json values serialize");
                s.push('\n');
                s
            }
        }
    }
}
