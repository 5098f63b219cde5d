//! Daily observations from comma-separated files.

use std::collections::BTreeMap;
use std::io;
use std::path::Path;

use chrono::NaiveDate;
use thiserror::Error;

use crate::kb::FuzzyKnowledgeBase;
use crate::protoform::{DataSeries, SeriesError};

#[derive(Debug, Error)]
pub enum IngestError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: io::Error },
    #[error("line {line}: {message}")]
    Csv { line: u64, message: String },
    #[error("header must start with 'date', found {0:?}")]
    Header(String),
    #[error("column '{0}' is not a variable of the knowledge base")]
    UnknownColumn(String),
    #[error("column '{0}' is required but missing")]
    MissingColumn(String),
    #[error("line {line}: invalid date {value:?} (expected YYYY-MM-DD)")]
    Date { line: u64, value: String },
    #[error("line {line}, column '{column}': {value:?} is not a number")]
    Number { line: u64, column: String, value: String },
    #[error("line {line}, column '{column}': value is required")]
    MissingValue { line: u64, column: String },
    #[error("line {line}, column '{column}': {value} is outside the domain [{lo}, {hi}]")]
    OutOfDomain {
        line: u64,
        column: String,
        value: f64,
        lo: f64,
        hi: f64,
    },
    #[error("date {0} appears more than once")]
    DuplicateDate(NaiveDate),
    #[error("no observation rows")]
    Empty,
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// Observations sorted by date, one optional value per variable column.
#[derive(Debug, Clone, PartialEq)]
pub struct ObservationTable {
    dates: Vec<NaiveDate>,
    /// Column names in file order.
    columns: Vec<String>,
    values: BTreeMap<String, Vec<Option<f64>>>,
}

impl ObservationTable {
    pub fn dates(&self) -> &[NaiveDate] {
        &self.dates
    }

    pub fn columns(&self) -> &[String] {
        &self.columns
    }

    pub fn len(&self) -> usize {
        self.dates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dates.is_empty()
    }

    pub fn first_date(&self) -> Option<NaiveDate> {
        self.dates.first().copied()
    }

    pub fn last_date(&self) -> Option<NaiveDate> {
        self.dates.last().copied()
    }

    pub fn column(&self, name: &str) -> Option<&[Option<f64>]> {
        self.values.get(name).map(Vec::as_slice)
    }

    /// Series for `variable`; fails if the column is absent or has gaps.
    pub fn series(&self, kb: &FuzzyKnowledgeBase, variable: &str) -> Result<DataSeries, IngestError> {
        let var = kb
            .variable(variable)
            .map_err(|_| IngestError::UnknownColumn(variable.to_string()))?;
        let column = self
            .column(variable)
            .ok_or_else(|| IngestError::MissingColumn(variable.to_string()))?;
        let mut points = Vec::with_capacity(column.len());
        for (i, (date, v)) in self.dates.iter().zip(column).enumerate() {
            let value = v.ok_or_else(|| IngestError::MissingValue {
                line: i as u64 + 2,
                column: variable.to_string(),
            })?;
            points.push((*date, value));
        }
        Ok(DataSeries::for_variable(var, points)?)
    }

    /// Writes the table back in the same layout; values use the shortest
    /// representation that reads back to the same number.
    pub fn write<W: io::Write>(&self, out: W) -> Result<(), IngestError> {
        let csv_err = |e: csv::Error| IngestError::Csv {
            line: 0,
            message: e.to_string(),
        };
        let mut w = csv::Writer::from_writer(out);
        let mut header = vec!["date".to_string()];
        header.extend(self.columns.iter().cloned());
        w.write_record(&header).map_err(csv_err)?;
        for (i, date) in self.dates.iter().enumerate() {
            let mut row = vec![date.format("%Y-%m-%d").to_string()];
            for c in &self.columns {
                row.push(self.values[c][i].map(|v| v.to_string()).unwrap_or_default());
            }
            w.write_record(&row).map_err(csv_err)?;
        }
        w.flush().map_err(|e| IngestError::Io {
            path: "<output>".into(),
            source: e,
        })
    }
}

pub fn load_observations(
    path: &Path,
    kb: &FuzzyKnowledgeBase,
    required: &[String],
) -> Result<ObservationTable, IngestError> {
    let file = std::fs::File::open(path).map_err(|source| IngestError::Io {
        path: path.display().to_string(),
        source,
    })?;
    read_observations(file, kb, required)
}

/// Parses and validates observations. Rows may come in any order; the
/// table is sorted by date.
pub fn read_observations<R: io::Read>(
    input: R,
    kb: &FuzzyKnowledgeBase,
    required: &[String],
) -> Result<ObservationTable, IngestError> {
    let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(input);
    let header = reader
        .headers()
        .map_err(|e| IngestError::Csv {
            line: 1,
            message: e.to_string(),
        })?
        .clone();
    if header.get(0) != Some("date") {
        return Err(IngestError::Header(header.get(0).unwrap_or("").to_string()));
    }
    let columns: Vec<String> = header.iter().skip(1).map(str::to_string).collect();
    for c in &columns {
        kb.variable(c).map_err(|_| IngestError::UnknownColumn(c.clone()))?;
    }
    for r in required {
        if !columns.contains(r) {
            return Err(IngestError::MissingColumn(r.clone()));
        }
    }

    let mut rows: Vec<(NaiveDate, Vec<Option<f64>>)> = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| IngestError::Csv {
            line: e.position().map_or(0, |p| p.line()),
            message: e.to_string(),
        })?;
        let line = record.position().map_or(0, |p| p.line());
        let raw_date = record.get(0).unwrap_or("");
        let date = NaiveDate::parse_from_str(raw_date, "%Y-%m-%d").map_err(|_| IngestError::Date {
            line,
            value: raw_date.to_string(),
        })?;
        let mut values = Vec::with_capacity(columns.len());
        for (j, name) in columns.iter().enumerate() {
            let cell = record.get(j + 1).unwrap_or("");
            if cell.is_empty() {
                if required.contains(name) {
                    return Err(IngestError::MissingValue {
                        line,
                        column: name.clone(),
                    });
                }
                values.push(None);
                continue;
            }
            let value: f64 = cell
                .parse()
                .ok()
                .filter(|v: &f64| v.is_finite())
                .ok_or_else(|| IngestError::Number {
                    line,
                    column: name.clone(),
                    value: cell.to_string(),
                })?;
            let var = kb.variable(name).expect("checked against header");
            if !var.contains(value) {
                return Err(IngestError::OutOfDomain {
                    line,
                    column: name.clone(),
                    value,
                    lo: var.domain.0,
                    hi: var.domain.1,
                });
            }
            values.push(Some(value));
        }
        rows.push((date, values));
    }
    if rows.is_empty() {
        return Err(IngestError::Empty);
    }
    rows.sort_by_key(|r| r.0);
    if let Some(w) = rows.windows(2).find(|w| w[0].0 == w[1].0) {
        return Err(IngestError::DuplicateDate(w[0].0));
    }

    let mut values: BTreeMap<String, Vec<Option<f64>>> =
        columns.iter().map(|c| (c.clone(), Vec::with_capacity(rows.len()))).collect();
    let mut dates = Vec::with_capacity(rows.len());
    for (date, row) in rows {
        dates.push(date);
        for (c, v) in columns.iter().zip(row) {
            values.get_mut(c).expect("column").push(v);
        }
    }
    Ok(ObservationTable {
        dates,
        columns,
        values,
    })
}
