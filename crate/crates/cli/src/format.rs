//! Tableau documents (JSON and text) and tabular output (CSV, JSON, text).

use std::io::Write;

use serde::{Deserialize, Serialize};
use staircase_core::asep::FilledTableau;
use staircase_core::tableau::Violation;
use staircase_core::{Symbol, Tableau};

use crate::CliError;

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct CellDoc {
    pub row: usize,
    pub col: usize,
    pub sym: String,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct LabelDoc {
    pub row: usize,
    pub col: usize,
    pub label: String,
}

/// `{n, cells: [{row, col, sym}]}`, cells sorted by `(row, col)`.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct TableauDoc {
    pub n: usize,
    pub cells: Vec<CellDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<LabelDoc>>,
}

impl TableauDoc {
    pub fn of(t: &Tableau) -> Self {
        let cells = t
            .cells()
            .map(|(row, col, s)| CellDoc { row, col, sym: s.name().to_string() })
            .collect();
        TableauDoc { n: t.size(), cells, labels: None }
    }

    pub fn of_filled(f: &FilledTableau) -> Self {
        let mut doc = TableauDoc::of(f.base());
        doc.labels = Some(
            f.labels()
                .map(|(row, col, l)| LabelDoc { row, col, label: l.letter().to_string() })
                .collect(),
        );
        doc
    }
}

/// Why a document could not be turned into a tableau.
#[derive(Debug, thiserror::Error)]
pub enum DocError {
    #[error("malformed document: {0}")]
    Malformed(String),
    #[error("invalid tableau: {}", describe(.0))]
    Invalid(Vec<Violation>),
}

fn describe(vs: &[Violation]) -> String {
    vs.iter()
        .map(|v| format!("{} at ({},{})", v.rule.label(), v.at.0, v.at.1))
        .collect::<Vec<_>>()
        .join("; ")
}

pub fn tableau_to_json(t: &Tableau) -> String {
    serde_json::to_string(&TableauDoc::of(t)).expect("tableau documents always serialize")
}

pub fn filled_to_json(f: &FilledTableau) -> String {
    serde_json::to_string(&TableauDoc::of_filled(f)).expect("tableau documents always serialize")
}

/// Parses a tableau document. Shape problems (boxes outside the staircase,
/// repeated boxes, unknown symbols) are malformed; rule breaches are invalid.
pub fn tableau_from_json(text: &str) -> Result<Tableau, DocError> {
    let doc: TableauDoc = serde_json::from_str(text).map_err(|e| DocError::Malformed(e.to_string()))?;
    tableau_from_doc(&doc)
}

pub fn tableau_from_doc(doc: &TableauDoc) -> Result<Tableau, DocError> {
    if doc.n == 0 {
        return Err(DocError::Malformed("size must be positive".into()));
    }
    let mut t = Tableau::empty(doc.n);
    for c in &doc.cells {
        let sym = Symbol::from_name(&c.sym)
            .ok_or_else(|| DocError::Malformed(format!("unknown symbol {:?}", c.sym)))?;
        if !t.contains_box(c.row, c.col) {
            return Err(DocError::Malformed(format!(
                "box ({},{}) lies outside the staircase of size {}",
                c.row, c.col, doc.n
            )));
        }
        if t.get(c.row, c.col).is_some() {
            return Err(DocError::Malformed(format!("box ({},{}) given twice", c.row, c.col)));
        }
        t.set(c.row, c.col, Some(sym));
    }
    let violations = t.validate();
    if violations.is_empty() {
        Ok(t)
    } else {
        Err(DocError::Invalid(violations))
    }
}

/// Reads either a JSON document or the text rendering.
pub fn tableau_from_any(text: &str) -> Result<Tableau, DocError> {
    if text.trim_start().starts_with('{') {
        return tableau_from_json(text);
    }
    let t = Tableau::parse_text(text).map_err(|e| DocError::Malformed(e.to_string()))?;
    let violations = t.validate();
    if violations.is_empty() {
        Ok(t)
    } else {
        Err(DocError::Invalid(violations))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// A table of strings with named columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(headers: &[&str]) -> Self {
        Table { headers: headers.iter().map(|h| h.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push<I, S>(&mut self, row: I)
    where
        I: IntoIterator<Item = S>,
        S: ToString,
    {
        let row: Vec<String> = row.into_iter().map(|s| s.to_string()).collect();
        debug_assert_eq!(row.len(), self.headers.len());
        self.rows.push(row);
    }

    pub fn write<W: Write>(&self, out: &mut W, format: Format) -> Result<(), CliError> {
        match format {
            Format::Csv => {
                let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
                w.write_record(&self.headers)?;
                for r in &self.rows {
                    w.write_record(r)?;
                }
                w.flush()?;
            }
            Format::Json => {
                let records: Vec<serde_json::Map<String, serde_json::Value>> = self
                    .rows
                    .iter()
                    .map(|r| {
                        self.headers
                            .iter()
                            .zip(r)
                            .map(|(h, v)| (h.clone(), serde_json::Value::String(v.clone())))
                            .collect()
                    })
                    .collect();
                serde_json::to_writer(&mut *out, &records)?;
                writeln!(out)?;
            }
            Format::Text => {
                let widths: Vec<usize> = (0..self.headers.len())
                    .map(|i| {
                        self.rows
                            .iter()
                            .map(|r| r[i].chars().count())
                            .chain([self.headers[i].chars().count()])
                            .max()
                            .unwrap_or(0)
                    })
                    .collect();
                for r in std::iter::once(&self.headers).chain(&self.rows) {
                    let line: Vec<String> =
                        r.iter().zip(&widths).map(|(v, w)| format!("{v:>w$}")).collect();
                    writeln!(out, "{}", line.join("  ").trim_end())?;
                }
            }
        }
        Ok(())
    }
}
