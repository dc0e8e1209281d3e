use serde_json::{json, Map, Value};

use crate::Format;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Exit statuses shared by every subcommand.
pub const OK: u8 = 0;
pub const USAGE: u8 = 1;
pub const VIOLATION: u8 = 2;

#[derive(Debug)]
pub struct Report {
    pub command: &'static str,
    pub body: Map<String, Value>,
    pub text: String,
    pub status: u8,
}

impl Report {
    pub fn new(command: &'static str, body: Value, text: String) -> Self {
        let Value::Object(body) = body else {
            panic!("report bodies are JSON objects")
        };
        Report { command, body, text, status: OK }
    }

    pub fn with_status(mut self, status: u8) -> Self {
        self.status = status;
        self
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.text.clone(),
            Format::Json => {
                let mut m = Map::new();
                m.insert("version".into(), json!(VERSION));
                m.insert("command".into(), json!(self.command));
                m.extend(self.body.clone());
                let mut s = serde_json::to_string_pretty(&Value::Object(m)).expect("reports serialize");
                s.push('\n');
                s
            }
        }
    }
}

#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Violation(String),
}

impl Failure {
    pub fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Violation(m) => m,
        }
    }

    pub fn render(&self) -> String {
        let kind = match self {
            Failure::Usage(_) => "usage",
            Failure::Violation(_) => "violation",
        };
        let v = json!({ "version": VERSION, "error": { "kind": kind, "message": self.message() } });
        serde_json::to_string_pretty(&v).expect("errors serialize") + "\n"
    }

    pub fn status(&self) -> u8 {
        match self {
            Failure::Usage(_) => USAGE,
            Failure::Violation(_) => VIOLATION,
        }
    }
}

pub fn usage(e: impl std::fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

pub fn violation(e: impl std::fmt::Display) -> Failure {
    Failure::Violation(e.to_string())
}
