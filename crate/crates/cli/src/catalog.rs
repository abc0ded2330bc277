//! Catalogs of named tests, in JSON or CSV.
//!
//! JSON is an array of objects with `name` and either
//! `sensitivity`/`specificity` or `tp`/`fp`/`fn`/`tn`, plus an optional
//! `prevalence`. CSV uses the header `name,sensitivity,specificity,prevalence`
//! or `name,tp,fp,fn,tn,prevalence`; the prevalence cell may be empty.

use std::collections::HashSet;
use std::io::{Read, Write};
use std::str::FromStr;

use screening_curves::{ConfusionMatrix, TestCharacteristics};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CatalogFormat {
    Json,
    Csv,
}

impl FromStr for CatalogFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "json" => Ok(CatalogFormat::Json),
            "csv" => Ok(CatalogFormat::Csv),
            other => Err(format!(
                "unknown catalog format `{other}` (expected json or csv)"
            )),
        }
    }
}

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("malformed JSON catalog at line {line}, column {column}: {message}")]
    Json {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("malformed CSV catalog at line {line}: {message}")]
    Csv { line: u64, message: String },
    /// `row` is the 1-based entry index for JSON and the line number for CSV.
    #[error("{location} {row}: field `{field}`: {message}")]
    Invalid {
        location: &'static str,
        row: u64,
        field: String,
        message: String,
    },
    #[error("{location} {row}: duplicate test name `{name}`")]
    Duplicate {
        location: &'static str,
        row: u64,
        name: String,
    },
    #[error("cannot write a CSV catalog mixing rate and count entries")]
    MixedSources,
    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Source {
    Rates(TestCharacteristics),
    Counts(ConfusionMatrix),
}

#[derive(Debug, Clone, PartialEq)]
pub struct CatalogEntry {
    pub name: String,
    pub source: Source,
    pub prevalence: Option<f64>,
}

impl CatalogEntry {
    pub fn characteristics(&self) -> TestCharacteristics {
        match &self.source {
            Source::Rates(t) => *t,
            Source::Counts(m) => m.characteristics(),
        }
    }
}

#[derive(Debug, Default, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct RawEntry {
    name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    sensitivity: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    specificity: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    tp: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    fp: Option<u64>,
    #[serde(default, rename = "fn", skip_serializing_if = "Option::is_none")]
    fneg: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    tn: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    prevalence: Option<f64>,
}

impl From<&CatalogEntry> for RawEntry {
    fn from(e: &CatalogEntry) -> Self {
        let mut raw = RawEntry {
            name: e.name.clone(),
            prevalence: e.prevalence,
            ..RawEntry::default()
        };
        match &e.source {
            Source::Rates(t) => {
                raw.sensitivity = Some(t.sensitivity());
                raw.specificity = Some(t.specificity());
            }
            Source::Counts(m) => {
                raw.tp = Some(m.true_positives());
                raw.fp = Some(m.false_positives());
                raw.fneg = Some(m.false_negatives());
                raw.tn = Some(m.true_negatives());
            }
        }
        raw
    }
}

struct Validator {
    location: &'static str,
    row: u64,
}

impl Validator {
    fn invalid(&self, field: &str, message: impl Into<String>) -> CatalogError {
        CatalogError::Invalid {
            location: self.location,
            row: self.row,
            field: field.to_string(),
            message: message.into(),
        }
    }

    fn math(&self, fallback_field: &str, e: screening_curves::Error) -> CatalogError {
        let field = match &e {
            screening_curves::Error::OutOfRange { field, .. } => field,
            _ => fallback_field,
        };
        self.invalid(field, e.to_string())
    }

    fn entry(&self, raw: RawEntry) -> Result<CatalogEntry, CatalogError> {
        if raw.name.trim().is_empty() {
            return Err(self.invalid("name", "must not be empty"));
        }
        let rates = [raw.sensitivity, raw.specificity];
        let counts = [raw.tp, raw.fp, raw.fneg, raw.tn];
        let any_rates = rates.iter().any(Option::is_some);
        let any_counts = counts.iter().any(Option::is_some);
        let source = match (any_rates, any_counts) {
            (true, true) => {
                return Err(self.invalid(
                    "sensitivity",
                    "give either sensitivity/specificity or tp/fp/fn/tn, not both",
                ))
            }
            (false, false) => {
                return Err(self.invalid(
                    "sensitivity",
                    "missing: give sensitivity/specificity or tp/fp/fn/tn",
                ))
            }
            (true, false) => {
                let a = raw
                    .sensitivity
                    .ok_or_else(|| self.invalid("sensitivity", "missing"))?;
                let b = raw
                    .specificity
                    .ok_or_else(|| self.invalid("specificity", "missing"))?;
                Source::Rates(
                    TestCharacteristics::new(a, b).map_err(|e| self.math("sensitivity", e))?,
                )
            }
            (false, true) => {
                let names = ["tp", "fp", "fn", "tn"];
                let mut values = [0u64; 4];
                for ((slot, value), name) in values.iter_mut().zip(counts).zip(names) {
                    *slot = value.ok_or_else(|| self.invalid(name, "missing"))?;
                }
                let [tp, fp, fneg, tn] = values;
                let m = ConfusionMatrix::new(tp, fp, fneg, tn).map_err(|e| self.math("tp", e))?;
                Source::Counts(m)
            }
        };
        if let Some(p) = raw.prevalence {
            if !(p.is_finite() && (0.0..=1.0).contains(&p)) {
                return Err(self.invalid("prevalence", format!("must be in [0, 1], got {p}")));
            }
        }
        Ok(CatalogEntry {
            name: raw.name,
            source,
            prevalence: raw.prevalence,
        })
    }
}

pub fn parse_catalog(
    input: impl Read,
    format: CatalogFormat,
) -> Result<Vec<CatalogEntry>, CatalogError> {
    let located: Vec<(u64, RawEntry)> = match format {
        CatalogFormat::Json => read_json(input)?,
        CatalogFormat::Csv => read_csv(input)?,
    };
    let location = match format {
        CatalogFormat::Json => "entry",
        CatalogFormat::Csv => "line",
    };
    let mut seen = HashSet::new();
    let mut entries = Vec::with_capacity(located.len());
    for (row, raw) in located {
        let entry = Validator { location, row }.entry(raw)?;
        if !seen.insert(entry.name.clone()) {
            return Err(CatalogError::Duplicate {
                location,
                row,
                name: entry.name,
            });
        }
        entries.push(entry);
    }
    Ok(entries)
}

fn read_json(input: impl Read) -> Result<Vec<(u64, RawEntry)>, CatalogError> {
    let raw: Vec<RawEntry> = serde_json::from_reader(input).map_err(|e| CatalogError::Json {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    Ok((1..).zip(raw).collect())
}

fn read_csv(input: impl Read) -> Result<Vec<(u64, RawEntry)>, CatalogError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_reader(input);
    let csv_error = |e: csv::Error| CatalogError::Csv {
        line: e.position().map_or(0, |p| p.line()),
        message: e.to_string(),
    };
    let header: Vec<String> = reader
        .headers()
        .map_err(csv_error)?
        .iter()
        .map(|h| h.trim().to_string())
        .collect();
    const HEADERS: [&[&str]; 4] = [
        &["name", "sensitivity", "specificity", "prevalence"],
        &["name", "sensitivity", "specificity"],
        &["name", "tp", "fp", "fn", "tn", "prevalence"],
        &["name", "tp", "fp", "fn", "tn"],
    ];
    if !HEADERS
        .iter()
        .any(|h| header.iter().map(String::as_str).eq(h.iter().copied()))
    {
        return Err(CatalogError::Csv {
            line: 1,
            message: format!(
                "header must be `name,sensitivity,specificity,prevalence` or `name,tp,fp,fn,tn,prevalence`, got `{}`",
                header.join(",")
            ),
        });
    }
    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record.map_err(csv_error)?;
        let line = record.position().map_or(0, |p| p.line());
        let v = Validator {
            location: "line",
            row: line,
        };
        let mut raw = RawEntry::default();
        for (column, cell) in header.iter().zip(record.iter()) {
            let cell = cell.trim();
            match column.as_str() {
                "name" => raw.name = cell.to_string(),
                "sensitivity" => raw.sensitivity = Some(parse_cell(&v, column, cell)?),
                "specificity" => raw.specificity = Some(parse_cell(&v, column, cell)?),
                "tp" => raw.tp = Some(parse_cell(&v, column, cell)?),
                "fp" => raw.fp = Some(parse_cell(&v, column, cell)?),
                "fn" => raw.fneg = Some(parse_cell(&v, column, cell)?),
                "tn" => raw.tn = Some(parse_cell(&v, column, cell)?),
                "prevalence" if cell.is_empty() => {}
                "prevalence" => raw.prevalence = Some(parse_cell(&v, column, cell)?),
                _ => unreachable!("header validated above"),
            }
        }
        rows.push((line, raw));
    }
    Ok(rows)
}

fn parse_cell<T: FromStr>(v: &Validator, column: &str, cell: &str) -> Result<T, CatalogError> {
    cell.parse()
        .map_err(|_| v.invalid(column, format!("cannot parse `{cell}`")))
}

/// Writes entries back in catalog form. Floats use the shortest
/// representation that parses back to the same value.
pub fn write_catalog(
    entries: &[CatalogEntry],
    format: CatalogFormat,
    mut out: impl Write,
) -> Result<(), CatalogError> {
    match format {
        CatalogFormat::Json => {
            let raw: Vec<RawEntry> = entries.iter().map(RawEntry::from).collect();
            serde_json::to_writer_pretty(&mut out, &raw).map_err(std::io::Error::from)?;
            writeln!(out)?;
        }
        CatalogFormat::Csv => {
            let counts = entries
                .iter()
                .filter(|e| matches!(e.source, Source::Counts(_)))
                .count();
            if counts != 0 && counts != entries.len() {
                return Err(CatalogError::MixedSources);
            }
            let prevalence =
                |e: &CatalogEntry| e.prevalence.map(|p| p.to_string()).unwrap_or_default();
            if counts == 0 {
                writeln!(out, "name,sensitivity,specificity,prevalence")?;
            } else {
                writeln!(out, "name,tp,fp,fn,tn,prevalence")?;
            }
            let mut w = csv::WriterBuilder::new()
                .has_headers(false)
                .from_writer(out);
            for e in entries {
                let row: Vec<String> = match &e.source {
                    Source::Rates(t) => vec![
                        e.name.clone(),
                        t.sensitivity().to_string(),
                        t.specificity().to_string(),
                        prevalence(e),
                    ],
                    Source::Counts(m) => vec![
                        e.name.clone(),
                        m.true_positives().to_string(),
                        m.false_positives().to_string(),
                        m.false_negatives().to_string(),
                        m.true_negatives().to_string(),
                        prevalence(e),
                    ],
                };
                w.write_record(&row).map_err(|e| CatalogError::Csv {
                    line: 0,
                    message: e.to_string(),
                })?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn json(s: &str) -> Result<Vec<CatalogEntry>, CatalogError> {
        parse_catalog(s.as_bytes(), CatalogFormat::Json)
    }

    fn csv(s: &str) -> Result<Vec<CatalogEntry>, CatalogError> {
        parse_catalog(s.as_bytes(), CatalogFormat::Csv)
    }

    #[test]
    fn json_rates_entry() {
        let e = json(r#"[{"name":"covid-pcr","sensitivity":0.95,"specificity":0.99}]"#).unwrap();
        assert_eq!(e.len(), 1);
        assert_eq!(e[0].name, "covid-pcr");
        assert!((e[0].characteristics().screening_coefficient() - 1.94).abs() < 1e-15);
        assert_eq!(e[0].prevalence, None);
    }

    #[test]
    fn csv_counts_entry() {
        let e = csv("name,tp,fp,fn,tn,prevalence\nsym,9,1,1,9,\n").unwrap();
        let t = e[0].characteristics();
        assert_eq!((t.sensitivity(), t.specificity()), (0.9, 0.9));
    }

    #[test]
    fn csv_without_prevalence_column() {
        let e = csv("name,sensitivity,specificity\nx,0.8,0.7\n").unwrap();
        assert_eq!(e[0].characteristics().sensitivity(), 0.8);
    }

    #[test]
    fn out_of_range_names_field_and_row() {
        let err = json(
            r#"[{"name":"ok","sensitivity":0.9,"specificity":0.9},
                          {"name":"bad","sensitivity":1.2,"specificity":0.9}]"#,
        )
        .unwrap_err();
        match err {
            CatalogError::Invalid { row, field, .. } => {
                assert_eq!(row, 2);
                assert_eq!(field, "sensitivity");
            }
            other => panic!("unexpected {other:?}"),
        }
        let err = csv("name,sensitivity,specificity,prevalence\na,0.9,0.9,\nb,1.2,0.9,0.1\n")
            .unwrap_err();
        assert!(err.to_string().contains("line 3"), "{err}");
        assert!(err.to_string().contains("sensitivity"), "{err}");
    }

    #[test]
    fn duplicate_names_rejected() {
        let err =
            csv("name,sensitivity,specificity,prevalence\na,0.9,0.9,\na,0.8,0.8,\n").unwrap_err();
        assert!(
            matches!(err, CatalogError::Duplicate { row: 3, .. }),
            "{err:?}"
        );
    }

    #[test]
    fn malformed_inputs() {
        assert!(matches!(
            json("[{\"name\": }]"),
            Err(CatalogError::Json { line: 1, .. })
        ));
        assert!(matches!(
            json(r#"[{"name":"x","tp":-1,"fp":0,"fn":1,"tn":1}]"#),
            Err(CatalogError::Json { .. })
        ));
        assert!(matches!(
            csv("name,a,b\nx,1,2\n"),
            Err(CatalogError::Csv { line: 1, .. })
        ));
        assert!(matches!(
            csv("name,tp,fp,fn,tn,prevalence\nx,1,two,3,4,\n"),
            Err(CatalogError::Invalid { row: 2, .. })
        ));
    }

    #[test]
    fn both_or_neither_source_rejected() {
        assert!(json(
            r#"[{"name":"x","sensitivity":0.9,"specificity":0.9,"tp":1,"fp":1,"fn":1,"tn":1}]"#
        )
        .is_err());
        assert!(json(r#"[{"name":"x"}]"#).is_err());
        assert!(json(r#"[{"name":"x","sensitivity":0.9}]"#).is_err());
        assert!(json(r#"[{"name":"x","tp":0,"fp":1,"fn":0,"tn":1}]"#).is_err());
        assert!(
            json(r#"[{"name":"x","sensitivity":0.9,"specificity":0.9,"prevalence":2}]"#).is_err()
        );
    }

    #[test]
    fn csv_refuses_mixed_sources() {
        let e = json(
            r#"[{"name":"r","sensitivity":0.9,"specificity":0.9},
               {"name":"c","tp":1,"fp":1,"fn":1,"tn":1}]"#,
        )
        .unwrap();
        assert!(matches!(
            write_catalog(&e, CatalogFormat::Csv, Vec::new()),
            Err(CatalogError::MixedSources)
        ));
    }
}
