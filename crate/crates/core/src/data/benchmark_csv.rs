use std::io::{Read, Write};
use std::path::Path;

use super::{format_float, open_file, parse_cell, write_file, Table};
use crate::dataset::{FidelityDataset, FidelityLevel};
use crate::error::{Error, Result};
use crate::matrix::Matrix;

/// `<problem>_<fidelity>.csv`, e.g. `forrester2f_lf.csv`.
pub fn benchmark_file_name(problem: &str, level: FidelityLevel) -> String {
    format!("{problem}_{}.csv", level.as_str().to_ascii_lowercase())
}

/// Fidelity encoded in a `<problem>_<fidelity>.csv` name, if any.
pub fn level_from_file_name(path: &Path) -> Option<FidelityLevel> {
    let stem = path.file_stem()?.to_str()?;
    let (_, tag) = stem.rsplit_once('_')?;
    tag.parse().ok()
}

/// Parses a benchmark file with columns `x1..xd, y, fidelity` in any order.
///
/// Every row must carry the same fidelity tag. `expected` pins the level
/// (and supplies it for header-only files).
pub fn parse_benchmark_csv<R: Read>(reader: R, expected: Option<FidelityLevel>) -> Result<FidelityDataset> {
    let table = Table::read(reader)?;
    let mut dim = 0;
    for h in &table.header {
        match h.as_str() {
            "y" | "fidelity" => {}
            other => {
                let k = other
                    .strip_prefix('x')
                    .and_then(|s| s.parse::<usize>().ok())
                    .filter(|&k| k >= 1 && !other[1..].starts_with('0'))
                    .ok_or_else(|| Error::Schema {
                        row: 0,
                        column: other.to_string(),
                        message: "unexpected column (expected x1..xd, y, fidelity)".into(),
                    })?;
                dim = dim.max(k);
            }
        }
    }
    let names: Vec<String> = (1..=dim).map(|j| format!("x{j}")).collect();
    let x_idx = names.iter().map(|n| table.index_of(n)).collect::<Result<Vec<_>>>()?;
    let y_idx = table.index_of("y")?;
    let f_idx = table.index_of("fidelity")?;

    let mut level = expected;
    let mut data = Vec::with_capacity(table.rows.len() * dim);
    let mut targets = Vec::with_capacity(table.rows.len());
    for (row, rec) in &table.rows {
        let tag: FidelityLevel = rec[f_idx].parse().map_err(|_| Error::Schema {
            row: *row,
            column: "fidelity".into(),
            message: format!("unknown fidelity tag `{}`", &rec[f_idx]),
        })?;
        match level {
            Some(l) if l != tag => {
                return Err(Error::Schema {
                    row: *row,
                    column: "fidelity".into(),
                    message: format!("expected {l}, found {tag}"),
                })
            }
            _ => level = Some(tag),
        }
        for (&j, name) in x_idx.iter().zip(&names) {
            data.push(parse_cell(rec, *row, j, name)?);
        }
        targets.push(parse_cell(rec, *row, y_idx, "y")?);
    }
    let level = level.ok_or_else(|| Error::Schema {
        row: 0,
        column: "fidelity".into(),
        message: "cannot infer the fidelity of a file without rows".into(),
    })?;
    let inputs = Matrix::from_vec(targets.len(), dim, data)?;
    FidelityDataset::new(inputs, targets, level)
}

/// Loads a benchmark file; the level is cross-checked against the file name
/// when the name follows `<problem>_<fidelity>.csv`.
pub fn load_benchmark_csv(path: &Path) -> Result<FidelityDataset> {
    let file = open_file(path)?;
    parse_benchmark_csv(file, level_from_file_name(path))
}

pub fn write_benchmark_csv<W: Write + ?Sized>(data: &FidelityDataset, w: &mut W) -> Result<()> {
    let mut wtr = csv::Writer::from_writer(w);
    let mut header: Vec<String> = (1..=data.dim()).map(|j| format!("x{j}")).collect();
    header.push("y".into());
    header.push("fidelity".into());
    wtr.write_record(&header)?;
    for (x, y) in data.inputs.iter_rows().zip(&data.targets) {
        let mut rec: Vec<String> = x.iter().map(|&v| format_float(v)).collect();
        rec.push(format_float(*y));
        rec.push(data.level.as_str().to_string());
        wtr.write_record(&rec)?;
    }
    wtr.flush().map_err(|e| Error::Csv(e.into()))?;
    Ok(())
}

pub fn save_benchmark_csv(data: &FidelityDataset, path: &Path) -> Result<()> {
    write_file(path, |w| write_benchmark_csv(data, w))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permuted_header_is_realigned() {
        let a = "x1,x2,y,fidelity\n1,2,3,HF\n4,5,6,HF\n";
        let b = "fidelity,y,x2,x1\nHF,3,2,1\nHF,6,5,4\n";
        let da = parse_benchmark_csv(a.as_bytes(), None).unwrap();
        let db = parse_benchmark_csv(b.as_bytes(), None).unwrap();
        assert_eq!(da, db);
        assert_eq!(da.inputs.row(1), &[4.0, 5.0]);
    }

    #[test]
    fn schema_errors_name_row_and_column() {
        let bad = "x1,y,fidelity\n1,2,LF\n1,oops,LF\n";
        match parse_benchmark_csv(bad.as_bytes(), None) {
            Err(Error::Schema { row, column, .. }) => assert_eq!((row, column.as_str()), (2, "y")),
            other => panic!("{other:?}"),
        }
        let missing = "x1,x3,y,fidelity\n1,2,3,LF\n";
        assert!(matches!(parse_benchmark_csv(missing.as_bytes(), None), Err(Error::Schema { .. })));
        let mixed = "x1,y,fidelity\n1,2,LF\n1,2,HF\n";
        assert!(matches!(parse_benchmark_csv(mixed.as_bytes(), None), Err(Error::Schema { row: 2, .. })));
        let nan = "x1,y,fidelity\nNaN,2,LF\n";
        assert!(matches!(parse_benchmark_csv(nan.as_bytes(), None), Err(Error::Schema { .. })));
    }

    #[test]
    fn file_name_convention() {
        assert_eq!(benchmark_file_name("forrester2f", FidelityLevel::Lf), "forrester2f_lf.csv");
        assert_eq!(level_from_file_name(Path::new("a/onc_hf.csv")), Some(FidelityLevel::Hf));
        assert_eq!(level_from_file_name(Path::new("plain.csv")), None);
    }
}
