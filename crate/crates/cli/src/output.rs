//! One result, three renderings.

use clap::ValueEnum;
use serde_json::{json, Value};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

pub struct Output {
    pub command: &'static str,
    pub json: Value,
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
    pub text: String,
}

impl Output {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.text.clone(),
            Format::Json => {
                let doc = json!({
                    "schema_version": SCHEMA_VERSION,
                    "command": self.command,
                    "result": self.json,
                });
                serde_json::to_string_pretty(&doc).expect("serializable") + "\n"
            }
            Format::Csv => {
                let mut w = csv::WriterBuilder::new()
                    .terminator(csv::Terminator::Any(b'\n'))
                    .from_writer(vec![]);
                w.write_record(&self.header).expect("in-memory write");
                for r in &self.rows {
                    w.write_record(r).expect("in-memory write");
                }
                String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
            }
        }
    }
}

pub fn blocks_label(blocks: &[(u32, u32)]) -> String {
    blocks.iter().map(|(n, m)| format!("{n}x{m}")).collect::<Vec<_>>().join(",")
}
