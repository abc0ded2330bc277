//! Per-test reports: threshold, AUC and predictive values at the current
//! prevalence, rendered as JSON, CSV or text.

use std::io::Write;

use screening_curves::{auc, threshold_report, Prevalence, TestCharacteristics};
use serde_json::{Map, Value};

use crate::catalog::CatalogEntry;
use crate::format::sig6;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Number(f64),
    Flag(bool),
    Text(String),
    /// Mathematically undefined (e.g. the threshold of the identity line).
    Undefined,
    /// Not computed: no prevalence given, or an earlier error.
    Missing,
}

impl Cell {
    fn number(x: Option<f64>) -> Cell {
        x.map_or(Cell::Undefined, Cell::Number)
    }

    fn json(&self) -> Value {
        match self {
            Cell::Number(x) => Value::from(*x),
            Cell::Flag(b) => Value::Bool(*b),
            Cell::Text(s) => Value::String(s.clone()),
            Cell::Undefined => Value::String("undefined".into()),
            Cell::Missing => Value::Null,
        }
    }

    fn csv(&self) -> String {
        match self {
            Cell::Number(x) => x.to_string(),
            Cell::Flag(b) => b.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Undefined => "undefined".into(),
            Cell::Missing => String::new(),
        }
    }

    fn text(&self) -> String {
        match self {
            Cell::Number(x) => sig6(*x),
            Cell::Missing => "-".into(),
            other => other.csv(),
        }
    }
}

pub const COLUMNS: [&str; 18] = [
    "name",
    "sensitivity",
    "specificity",
    "screening_coefficient",
    "youden_j",
    "concavity",
    "threshold",
    "ppv_at_threshold",
    "oracle_threshold",
    "oracle_residual",
    "auc_closed",
    "auc_numeric",
    "auc_residual",
    "prevalence",
    "ppv",
    "npv",
    "below_threshold",
    "error",
];

/// One report row; `cells` follows [`COLUMNS`].
#[derive(Debug, Clone, PartialEq)]
pub struct EntryReport {
    pub cells: Vec<Cell>,
}

impl EntryReport {
    pub fn get(&self, column: &str) -> Option<&Cell> {
        COLUMNS
            .iter()
            .position(|c| *c == column)
            .map(|i| &self.cells[i])
    }
}

pub fn report_entry(name: &str, t: &TestCharacteristics, prevalence: Option<f64>) -> EntryReport {
    let mut cells = vec![
        Cell::Text(name.to_string()),
        Cell::Number(t.sensitivity()),
        Cell::Number(t.specificity()),
        Cell::Number(t.screening_coefficient()),
        Cell::Number(t.youden_j()),
    ];
    let mut errors = Vec::new();
    let threshold = match threshold_report(t) {
        Ok(r) => {
            cells.extend([
                Cell::Text(r.concavity.class.name().into()),
                Cell::number(r.threshold),
                Cell::number(r.ppv_at_threshold),
                Cell::number(r.oracle_threshold),
                Cell::number(r.oracle_residual),
            ]);
            Some(r.threshold)
        }
        Err(e) => {
            cells.push(Cell::Text(t.classify().class.name().into()));
            cells.extend(std::iter::repeat_n(Cell::Missing, 4));
            errors.push(e.to_string());
            None
        }
    };
    match auc(t) {
        Ok(r) => cells.extend([
            Cell::Number(r.auc_closed),
            Cell::Number(r.auc_numeric),
            Cell::Number(r.residual),
        ]),
        Err(e) => {
            cells.extend(std::iter::repeat_n(Cell::Missing, 3));
            if !errors.contains(&e.to_string()) {
                errors.push(e.to_string());
            }
        }
    }
    match prevalence {
        None => cells.extend(std::iter::repeat_n(Cell::Missing, 4)),
        Some(phi) => {
            cells.push(Cell::Number(phi));
            let p = Prevalence::new(phi);
            for value in [p.clone().and_then(|p| t.ppv(p)), p.and_then(|p| t.npv(p))] {
                match value {
                    Ok(v) => cells.push(Cell::Number(v)),
                    Err(e) => {
                        cells.push(Cell::Undefined);
                        if !errors.contains(&e.to_string()) {
                            errors.push(e.to_string());
                        }
                    }
                }
            }
            cells.push(match threshold {
                Some(Some(phi_e)) => Cell::Flag(phi < phi_e),
                Some(None) => Cell::Undefined,
                None => Cell::Missing,
            });
        }
    }
    cells.push(if errors.is_empty() {
        Cell::Missing
    } else {
        Cell::Text(errors.join("; "))
    });
    debug_assert_eq!(cells.len(), COLUMNS.len());
    EntryReport { cells }
}

/// Reports every entry, in input order.
pub fn build_report(entries: &[CatalogEntry]) -> Vec<EntryReport> {
    entries
        .iter()
        .map(|e| report_entry(&e.name, &e.characteristics(), e.prevalence))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
    Text,
}

pub fn write_report(
    rows: &[EntryReport],
    format: OutputFormat,
    mut out: impl Write,
) -> std::io::Result<()> {
    match format {
        OutputFormat::Json => {
            let array: Vec<Value> = rows
                .iter()
                .map(|r| {
                    let map: Map<String, Value> = COLUMNS
                        .iter()
                        .zip(&r.cells)
                        .map(|(k, v)| (k.to_string(), v.json()))
                        .collect();
                    Value::Object(map)
                })
                .collect();
            serde_json::to_writer_pretty(&mut out, &array)?;
            writeln!(out)
        }
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(COLUMNS)?;
            for r in rows {
                w.write_record(r.cells.iter().map(Cell::csv))?;
            }
            w.flush()
        }
        OutputFormat::Text => {
            for (i, r) in rows.iter().enumerate() {
                if i > 0 {
                    writeln!(out)?;
                }
                for (k, v) in COLUMNS.iter().zip(&r.cells) {
                    if *v != Cell::Missing || *k != "error" {
                        writeln!(out, "{k:<22}{}", v.text())?;
                    }
                }
            }
            Ok(())
        }
    }
}
