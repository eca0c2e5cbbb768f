//! CSV interchange for fidelity datasets and the ONC transient schema.
//!
//! Files are comma-delimited with a header row and `.` decimals. Columns are
//! matched by name, so column order in a file is irrelevant. Floats are written
//! in shortest round-trip form, so `load(save(d)) == d` bit for bit.

mod benchmark_csv;
mod onc;

use std::fs::File;
use std::io::{BufWriter, Read, Write};
use std::path::Path;

pub use benchmark_csv::{
    benchmark_file_name, level_from_file_name, load_benchmark_csv, parse_benchmark_csv, save_benchmark_csv,
    write_benchmark_csv,
};
pub use onc::{
    load_onc_csv, parse_onc_csv, sample_onc_inputs, save_onc_csv, write_onc_csv, BoundsPolicy, OncDataset,
    OncOutput, ValidationReport, ONC_EXPECTED_ROWS, ONC_INPUTS, ONC_OUTPUTS,
};

use crate::error::{Error, Result};

/// Shortest decimal text that parses back to the same `f64`.
pub fn format_float(v: f64) -> String {
    let a = v.abs();
    if v == 0.0 || (1e-4..1e15).contains(&a) {
        format!("{v}")
    } else {
        format!("{v:e}")
    }
}

/// Header plus records with their 1-based data-row numbers.
pub(crate) struct Table {
    pub header: Vec<String>,
    pub rows: Vec<(usize, csv::StringRecord)>,
}

impl Table {
    pub fn read<R: Read>(reader: R) -> Result<Table> {
        let mut rdr = csv::ReaderBuilder::new()
            .has_headers(true)
            .flexible(true)
            .trim(csv::Trim::All)
            .from_reader(reader);
        let header: Vec<String> = rdr.headers()?.iter().map(str::to_string).collect();
        for (i, h) in header.iter().enumerate() {
            if h.is_empty() {
                return Err(Error::Schema {
                    row: 0,
                    column: format!("#{}", i + 1),
                    message: "empty column name".into(),
                });
            }
            if header[..i].contains(h) {
                return Err(Error::Schema {
                    row: 0,
                    column: h.clone(),
                    message: "duplicate column".into(),
                });
            }
        }
        let mut rows = Vec::new();
        for (i, rec) in rdr.records().enumerate() {
            let rec = rec?;
            if rec.len() != header.len() {
                return Err(Error::Schema {
                    row: i + 1,
                    column: "*".into(),
                    message: format!("expected {} fields, found {}", header.len(), rec.len()),
                });
            }
            rows.push((i + 1, rec));
        }
        Ok(Table { header, rows })
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.header.iter().position(|h| h == name).ok_or_else(|| Error::Schema {
            row: 0,
            column: name.to_string(),
            message: "missing column".into(),
        })
    }
}

pub(crate) fn parse_cell(rec: &csv::StringRecord, row: usize, idx: usize, name: &str) -> Result<f64> {
    let cell = &rec[idx];
    match cell.parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        Ok(_) => Err(Error::Schema {
            row,
            column: name.to_string(),
            message: format!("non-finite value `{cell}`"),
        }),
        Err(_) => Err(Error::Schema {
            row,
            column: name.to_string(),
            message: format!("not a number: `{cell}`"),
        }),
    }
}

pub(crate) fn write_file(path: &Path, f: impl FnOnce(&mut dyn Write) -> Result<()>) -> Result<()> {
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    let mut w = BufWriter::new(file);
    f(&mut w)?;
    w.flush().map_err(|e| Error::io(path, e))
}

pub(crate) fn open_file(path: &Path) -> Result<File> {
    File::open(path).map_err(|e| Error::io(path, e))
}

/// Reads the `prediction` column of a CSV file; other columns are ignored.
pub fn parse_predictions_csv<R: Read>(reader: R) -> Result<Vec<f64>> {
    let table = Table::read(reader)?;
    let j = table.index_of("prediction")?;
    table
        .rows
        .iter()
        .map(|(row, rec)| parse_cell(rec, *row, j, "prediction"))
        .collect()
}

pub fn load_predictions_csv(path: &Path) -> Result<Vec<f64>> {
    parse_predictions_csv(open_file(path)?)
}

pub fn save_predictions_csv(pred: &[f64], path: &Path) -> Result<()> {
    write_file(path, |w| {
        let mut s = String::from("prediction\n");
        for v in pred {
            s.push_str(&format_float(*v));
            s.push('\n');
        }
        w.write_all(s.as_bytes()).map_err(|e| Error::io(path, e))
    })
}
