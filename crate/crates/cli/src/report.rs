use std::collections::BTreeMap;

use bosonorder::kernel::Approx;
use clap::ValueEnum;
use serde_json::{json, Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

/// Everything a command produced, ready to be rendered in any format.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub command: &'static str,
    pub parameters: Map<String, Value>,
    pub results: Value,
    /// Tag of each identity used, mapped to a one-line description.
    pub provenance: BTreeMap<String, String>,
    pub text: String,
    pub csv_header: Vec<&'static str>,
    pub csv_rows: Vec<Vec<String>>,
    /// Set when the command ran to completion but a check it performed failed.
    pub failed: bool,
}

impl Report {
    pub fn new(command: &'static str) -> Self {
        Report {
            command,
            parameters: Map::new(),
            results: Value::Null,
            provenance: BTreeMap::new(),
            text: String::new(),
            csv_header: Vec::new(),
            csv_rows: Vec::new(),
            failed: false,
        }
    }

    pub fn param(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.parameters.insert(key.to_string(), value.into());
        self
    }

    pub fn cite(&mut self, tag: &str, description: &str) -> &mut Self {
        self.provenance
            .insert(tag.to_string(), description.to_string());
        self
    }

    pub fn envelope(&self) -> Value {
        json!({
            "command": self.command,
            "parameters": self.parameters,
            "results": self.results,
            "provenance": self.provenance,
        })
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
            Format::Json => render_json(&self.envelope()),
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&self.csv_header).expect("in-memory write");
                for row in &self.csv_rows {
                    w.write_record(row).expect("in-memory write");
                }
                String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
            }
        }
    }
}

/// Pretty JSON with sorted keys and a trailing newline.
pub fn render_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

/// An integer as a decimal string.
pub fn int_json(v: impl ToString) -> Value {
    Value::String(v.to_string())
}

pub fn approx_json(a: &Approx) -> Value {
    json!({
        "value": a.value,
        "tol": a.tol,
        "terms": a.terms.to_string(),
    })
}
