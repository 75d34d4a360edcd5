use anyhow::{bail, Result};
use clap::ValueEnum;
use serde::Serialize;
use serde_json::Value;

use permderiv::search::CountRow;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

/// What a command produced, before it is rendered in the requested format.
pub struct Report {
    pub command: &'static str,
    pub inputs: Value,
    pub result: Value,
    pub text: String,
    pub csv: Option<String>,
    pub notes: Vec<String>,
    /// `false` turns into exit code 1.
    pub success: bool,
}

impl Report {
    pub fn new(
        command: &'static str,
        inputs: Value,
        result: impl Serialize,
        text: impl Into<String>,
    ) -> Self {
        Self {
            command,
            inputs,
            result: serde_json::to_value(result).expect("results serialize to JSON"),
            text: text.into(),
            csv: None,
            notes: Vec::new(),
            success: true,
        }
    }

    pub fn with_csv(mut self, csv: String) -> Self {
        self.csv = Some(csv);
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    pub fn succeeded(mut self, success: bool) -> Self {
        self.success = success;
        self
    }
}

#[derive(Serialize)]
struct Envelope<'a> {
    command: &'a str,
    inputs: &'a Value,
    result: &'a Value,
    metadata: Metadata<'a>,
}

#[derive(Serialize)]
struct Metadata<'a> {
    success: bool,
    workers: usize,
    elapsed_ms: u128,
    notes: &'a [String],
}

pub fn render(report: &Report, format: Format, workers: usize, elapsed_ms: u128) -> Result<String> {
    Ok(match format {
        Format::Text => {
            let mut out = report.text.clone();
            for note in &report.notes {
                if !out.is_empty() && !out.ends_with('\n') {
                    out.push('\n');
                }
                out.push_str("note: ");
                out.push_str(note);
            }
            out
        }
        Format::Json => serde_json::to_string_pretty(&Envelope {
            command: report.command,
            inputs: &report.inputs,
            result: &report.result,
            metadata: Metadata {
                success: report.success,
                workers,
                elapsed_ms,
                notes: &report.notes,
            },
        })?,
        Format::Csv => match &report.csv {
            Some(csv) => csv.clone(),
            None => bail!(
                "`{}` has no CSV form; use --format text or json",
                report.command
            ),
        },
    })
}

pub fn rows_csv(rows: &[CountRow]) -> String {
    let mut out = String::from("n,total,count,fraction");
    for r in rows {
        out.push_str(&format!(
            "\n{},{},{},{}",
            r.n,
            r.total,
            r.count,
            r.fraction_text()
        ));
    }
    out
}

pub fn rows_text(rows: &[CountRow]) -> String {
    let mut out = format!("{:>3} {:>16} {:>14} {:>9}", "n", "n!", "count", "fraction");
    for r in rows {
        out.push_str(&format!(
            "\n{:>3} {:>16} {:>14} {:>9}",
            r.n,
            r.total,
            r.count,
            r.fraction_text()
        ));
    }
    out
}

/// Quotes a field that contains commas.
pub fn csv_field(s: &str) -> String {
    if s.contains([',', '"']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
