//! Onset-of-natural-circulation transient data: eight physical inputs, two
//! scalar outputs, one file per mesh fidelity.

use std::fmt;
use std::io::{Read, Write};
use std::path::Path;
use std::str::FromStr;

use super::{format_float, level_from_file_name, open_file, parse_cell, write_file, Table};
use crate::benchmarks::sample_box;
use crate::dataset::{FidelityDataset, FidelityLevel};
use crate::error::{Error, Result};
use crate::matrix::Matrix;

/// Input columns and their sampling bounds, in schema order.
pub const ONC_INPUTS: [(&str, f64, f64); 8] = [
    ("heated_temp_k", 873.15, 1498.2),
    ("unheated_htc", 0.1, 10.0),
    ("air_viscosity", 1.85e-5, 5.16e-5),
    ("air_conductivity", 0.02551, 0.08452),
    ("helium_viscosity", 1.98e-5, 6.15e-5),
    ("helium_conductivity", 0.15525, 0.47859),
    ("glass_conductivity", 1.4, 3.2),
    ("glass_thickness_m", 0.001, 0.004),
];

pub const ONC_OUTPUTS: [&str; 2] = ["time_to_onc", "temp_after_onc"];

/// Rows per fidelity file in the reference campaign.
pub const ONC_EXPECTED_ROWS: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OncOutput {
    TimeToOnc,
    TempAfterOnc,
}

impl OncOutput {
    pub const ALL: [OncOutput; 2] = [OncOutput::TimeToOnc, OncOutput::TempAfterOnc];

    pub fn as_str(self) -> &'static str {
        match self {
            OncOutput::TimeToOnc => ONC_OUTPUTS[0],
            OncOutput::TempAfterOnc => ONC_OUTPUTS[1],
        }
    }
}

impl fmt::Display for OncOutput {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for OncOutput {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "time_to_onc" => Ok(OncOutput::TimeToOnc),
            "temp_after_onc" => Ok(OncOutput::TempAfterOnc),
            other => Err(Error::Config(format!(
                "unknown output `{other}` (expected time_to_onc or temp_after_onc)"
            ))),
        }
    }
}

/// What to do with rows outside the input bounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BoundsPolicy {
    /// Keep the row and record a warning.
    #[default]
    Warn,
    /// Drop the row and count it as rejected.
    Reject,
    /// Fail on the first violation.
    Strict,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ValidationReport {
    pub accepted: usize,
    pub rejected: usize,
    /// 1-based data rows with at least one input outside the bounds.
    pub out_of_bounds: Vec<usize>,
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OncDataset {
    /// Inputs in [`ONC_INPUTS`] order.
    pub inputs: Matrix,
    pub time_to_onc: Vec<f64>,
    pub temp_after_onc: Vec<f64>,
    pub level: FidelityLevel,
    pub report: ValidationReport,
}

impl OncDataset {
    pub fn len(&self) -> usize {
        self.inputs.rows()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn output(&self, which: OncOutput) -> &[f64] {
        match which {
            OncOutput::TimeToOnc => &self.time_to_onc,
            OncOutput::TempAfterOnc => &self.temp_after_onc,
        }
    }

    /// Single-output dataset with named input columns.
    pub fn to_dataset(&self, which: OncOutput) -> Result<FidelityDataset> {
        let columns = ONC_INPUTS.iter().map(|(n, _, _)| n.to_string()).collect();
        FidelityDataset::with_columns(self.inputs.clone(), self.output(which).to_vec(), self.level, columns)
    }
}

/// Parses an ONC file. Columns are matched by name; `expected` pins the level.
pub fn parse_onc_csv<R: Read>(
    reader: R,
    policy: BoundsPolicy,
    expected: Option<FidelityLevel>,
) -> Result<OncDataset> {
    let table = Table::read(reader)?;
    let in_idx = ONC_INPUTS
        .iter()
        .map(|(n, _, _)| table.index_of(n))
        .collect::<Result<Vec<_>>>()?;
    let out_idx = ONC_OUTPUTS.iter().map(|n| table.index_of(n)).collect::<Result<Vec<_>>>()?;
    let f_idx = table.index_of("fidelity")?;
    if let Some(extra) = table
        .header
        .iter()
        .find(|h| !ONC_INPUTS.iter().any(|(n, _, _)| n == h) && !ONC_OUTPUTS.contains(&h.as_str()) && *h != "fidelity")
    {
        return Err(Error::Schema {
            row: 0,
            column: extra.clone(),
            message: "unexpected column".into(),
        });
    }

    let mut report = ValidationReport::default();
    let mut level = expected;
    let mut data = Vec::new();
    let (mut t, mut temp) = (Vec::new(), Vec::new());
    for (row, rec) in &table.rows {
        let tag: FidelityLevel = rec[f_idx].parse().map_err(|_| Error::Schema {
            row: *row,
            column: "fidelity".into(),
            message: format!("unknown fidelity tag `{}`", &rec[f_idx]),
        })?;
        if let Some(l) = level {
            if l != tag {
                return Err(Error::Schema {
                    row: *row,
                    column: "fidelity".into(),
                    message: format!("expected {l}, found {tag}"),
                });
            }
        }
        level = Some(tag);
        let mut x = Vec::with_capacity(8);
        let mut inside = true;
        for (&j, &(name, lo, hi)) in in_idx.iter().zip(&ONC_INPUTS) {
            let v = parse_cell(rec, *row, j, name)?;
            if !(lo..=hi).contains(&v) {
                if policy == BoundsPolicy::Strict {
                    return Err(Error::Bounds {
                        row: *row,
                        column: name.to_string(),
                        value: v,
                        lower: lo,
                        upper: hi,
                    });
                }
                if inside {
                    report.out_of_bounds.push(*row);
                }
                report
                    .warnings
                    .push(format!("row {row}: {name} = {v} outside [{lo}, {hi}]"));
                inside = false;
            }
            x.push(v);
        }
        let y0 = parse_cell(rec, *row, out_idx[0], ONC_OUTPUTS[0])?;
        let y1 = parse_cell(rec, *row, out_idx[1], ONC_OUTPUTS[1])?;
        if !inside && policy == BoundsPolicy::Reject {
            report.rejected += 1;
            continue;
        }
        report.accepted += 1;
        data.extend(x);
        t.push(y0);
        temp.push(y1);
    }
    let level = level.ok_or_else(|| Error::Schema {
        row: 0,
        column: "fidelity".into(),
        message: "cannot infer the fidelity of a file without rows".into(),
    })?;
    if table.rows.len() != ONC_EXPECTED_ROWS {
        report.warnings.push(format!(
            "{} rows where {ONC_EXPECTED_ROWS} are expected",
            table.rows.len()
        ));
    }
    Ok(OncDataset {
        inputs: Matrix::from_vec(t.len(), ONC_INPUTS.len(), data)?,
        time_to_onc: t,
        temp_after_onc: temp,
        level,
        report,
    })
}

pub fn load_onc_csv(path: &Path, policy: BoundsPolicy) -> Result<OncDataset> {
    parse_onc_csv(open_file(path)?, policy, level_from_file_name(path))
}

pub fn write_onc_csv<W: Write + ?Sized>(data: &OncDataset, w: &mut W) -> Result<()> {
    let mut wtr = csv::Writer::from_writer(w);
    let mut header: Vec<&str> = ONC_INPUTS.iter().map(|(n, _, _)| *n).collect();
    header.extend(ONC_OUTPUTS);
    header.push("fidelity");
    wtr.write_record(&header)?;
    for (i, x) in data.inputs.iter_rows().enumerate() {
        let mut rec: Vec<String> = x.iter().map(|&v| format_float(v)).collect();
        rec.push(format_float(data.time_to_onc[i]));
        rec.push(format_float(data.temp_after_onc[i]));
        rec.push(data.level.as_str().into());
        wtr.write_record(&rec)?;
    }
    wtr.flush().map_err(|e| Error::Csv(e.into()))?;
    Ok(())
}

pub fn save_onc_csv(data: &OncDataset, path: &Path) -> Result<()> {
    write_file(path, |w| write_onc_csv(data, w))
}

/// `n` input vectors drawn uniformly within the schema bounds.
pub fn sample_onc_inputs(n: usize, seed: u64) -> Result<Matrix> {
    let domain: Vec<(f64, f64)> = ONC_INPUTS.iter().map(|&(_, lo, hi)| (lo, hi)).collect();
    sample_box(&domain, n, seed)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn synthetic(n: usize, seed: u64) -> OncDataset {
        let inputs = sample_onc_inputs(n, seed).unwrap();
        let t = inputs.iter_rows().map(|x| 1e4 / x[0] + x[1]).collect();
        let temp = inputs.iter_rows().map(|x| 0.5 * x[0] + 10.0 * x[7]).collect();
        OncDataset {
            inputs,
            time_to_onc: t,
            temp_after_onc: temp,
            level: FidelityLevel::Mf,
            report: ValidationReport::default(),
        }
    }

    fn to_text(d: &OncDataset) -> String {
        let mut buf = Vec::new();
        write_onc_csv(d, &mut buf).unwrap();
        String::from_utf8(buf).unwrap()
    }

    #[test]
    fn samples_stay_in_bounds() {
        let m = sample_onc_inputs(500, 3).unwrap();
        for x in m.iter_rows() {
            for (v, (_, lo, hi)) in x.iter().zip(ONC_INPUTS) {
                assert!((lo..=hi).contains(v));
            }
        }
        assert_eq!(m, sample_onc_inputs(500, 3).unwrap());
    }

    #[test]
    fn round_trip_is_bitwise() {
        let d = synthetic(50, 1);
        let back = parse_onc_csv(to_text(&d).as_bytes(), BoundsPolicy::Strict, None).unwrap();
        assert_eq!(back.inputs, d.inputs);
        assert_eq!(back.time_to_onc, d.time_to_onc);
        assert_eq!(back.temp_after_onc, d.temp_after_onc);
        assert_eq!(back.report.accepted, 50);
    }

    #[test]
    fn strict_mode_cites_the_temperature_floor() {
        let mut d = synthetic(3, 2);
        d.inputs.set(1, 0, 500.0);
        let text = to_text(&d);
        match parse_onc_csv(text.as_bytes(), BoundsPolicy::Strict, None) {
            Err(Error::Bounds { row, column, lower, .. }) => {
                assert_eq!((row, column.as_str(), lower), (2, "heated_temp_k", 873.15));
            }
            other => panic!("{other:?}"),
        }
        let warn = parse_onc_csv(text.as_bytes(), BoundsPolicy::Warn, None).unwrap();
        assert_eq!((warn.report.accepted, warn.report.rejected), (3, 0));
        assert_eq!(warn.report.out_of_bounds, vec![2]);
        let rej = parse_onc_csv(text.as_bytes(), BoundsPolicy::Reject, None).unwrap();
        assert_eq!((rej.report.accepted, rej.report.rejected, rej.len()), (2, 1, 2));
    }

    #[test]
    fn dataset_view_names_columns() {
        let d = synthetic(4, 5).to_dataset(OncOutput::TempAfterOnc).unwrap();
        assert_eq!(d.columns[0], "heated_temp_k");
        assert_eq!(d.dim(), 8);
    }
}
