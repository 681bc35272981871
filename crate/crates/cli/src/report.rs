use std::fs;
use std::io::Write;
use std::path::Path;

use anyhow::{Context, Result};
use clap::ValueEnum;
use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// How a run compares with the published values.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Pass,
    Mismatch,
    ResourceAbort,
}

impl Status {
    pub fn exit_code(self) -> u8 {
        match self {
            Status::Pass => 0,
            Status::Mismatch => 2,
            Status::ResourceAbort => 3,
        }
    }

    pub fn from_check(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Mismatch
        }
    }
}

/// The result of one subcommand in all three output formats.
pub struct Report {
    pub json: Value,
    /// Rows of a CSV table, header first; defaults to flattened key/value pairs.
    pub table: Option<Vec<Vec<String>>>,
    /// Plain-text rendering; defaults to flattened `key: value` lines.
    pub text: Option<String>,
    pub status: Status,
}

impl Report {
    pub fn new(value: &impl Serialize) -> Result<Self> {
        Ok(Self { json: serde_json::to_value(value)?, table: None, text: None, status: Status::Pass })
    }

    pub fn with_status(mut self, status: Status) -> Self {
        self.status = status;
        self
    }

    pub fn with_table(mut self, table: Vec<Vec<String>>) -> Self {
        self.table = Some(table);
        self
    }

    pub fn with_text(mut self, text: String) -> Self {
        self.text = Some(text);
        self
    }

    pub fn render(&self, format: Format) -> Result<String> {
        Ok(match format {
            Format::Json => serde_json::to_string_pretty(&self.json)? + "\n",
            Format::Csv => {
                let rows = match &self.table {
                    Some(t) => t.clone(),
                    None => {
                        let mut rows = vec![vec!["key".to_string(), "value".to_string()]];
                        rows.extend(flatten(&self.json).into_iter().map(|(k, v)| vec![k, v]));
                        rows
                    }
                };
                let mut w = csv::WriterBuilder::new().flexible(true).from_writer(Vec::new());
                for row in rows {
                    w.write_record(row)?;
                }
                String::from_utf8(w.into_inner()?)?
            }
            Format::Text => match &self.text {
                Some(t) => t.clone(),
                None => flatten(&self.json).into_iter().map(|(k, v)| format!("{k}: {v}\n")).collect(),
            },
        })
    }

    pub fn emit(&self, format: Format, output: Option<&Path>) -> Result<()> {
        let body = self.render(format)?;
        match output {
            Some(path) => fs::write(path, body).with_context(|| format!("writing {}", path.display()))?,
            None => std::io::stdout().write_all(body.as_bytes())?,
        }
        Ok(())
    }
}

/// Dotted paths to every scalar in a JSON value, in document order.
pub fn flatten(value: &Value) -> Vec<(String, String)> {
    fn walk(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
        let key = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
        match v {
            Value::Object(m) => m.iter().for_each(|(k, v)| walk(&key(k), v, out)),
            Value::Array(a) => a.iter().enumerate().for_each(|(i, v)| walk(&key(&i.to_string()), v, out)),
            Value::String(s) => out.push((prefix.to_string(), s.clone())),
            other => out.push((prefix.to_string(), other.to_string())),
        }
    }
    let mut out = Vec::new();
    walk("", value, &mut out);
    out
}
