//! Tabular datasets tagged with the fidelity level they were produced at.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::matrix::Matrix;

/// Fidelity of a data source. Ordered from cheapest to most accurate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FidelityLevel {
    Lf,
    Mf,
    Hf,
}

impl FidelityLevel {
    pub const ALL: [FidelityLevel; 3] = [FidelityLevel::Lf, FidelityLevel::Mf, FidelityLevel::Hf];

    pub fn as_str(self) -> &'static str {
        match self {
            FidelityLevel::Lf => "LF",
            FidelityLevel::Mf => "MF",
            FidelityLevel::Hf => "HF",
        }
    }

    /// Normalized simulation cost (LF = 1, MF = 2, HF = 4).
    pub fn cost(self) -> usize {
        match self {
            FidelityLevel::Lf => 1,
            FidelityLevel::Mf => 2,
            FidelityLevel::Hf => 4,
        }
    }
}

impl fmt::Display for FidelityLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FidelityLevel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "LF" => Ok(FidelityLevel::Lf),
            "MF" => Ok(FidelityLevel::Mf),
            "HF" => Ok(FidelityLevel::Hf),
            other => Err(Error::Config(format!("unknown fidelity level `{other}` (expected LF, MF or HF)"))),
        }
    }
}

/// Inputs, targets and fidelity tag for one fidelity level of one problem.
#[derive(Debug, Clone, PartialEq)]
pub struct FidelityDataset {
    pub inputs: Matrix,
    pub targets: Vec<f64>,
    pub level: FidelityLevel,
    pub columns: Vec<String>,
}

impl FidelityDataset {
    /// Builds a dataset with default column names `x1..xd`.
    pub fn new(inputs: Matrix, targets: Vec<f64>, level: FidelityLevel) -> Result<Self> {
        let columns = (1..=inputs.cols()).map(|j| format!("x{j}")).collect();
        Self::with_columns(inputs, targets, level, columns)
    }

    pub fn with_columns(
        inputs: Matrix,
        targets: Vec<f64>,
        level: FidelityLevel,
        columns: Vec<String>,
    ) -> Result<Self> {
        if inputs.rows() != targets.len() {
            return Err(Error::shape(
                format!("{} targets", inputs.rows()),
                targets.len(),
            ));
        }
        if columns.len() != inputs.cols() {
            return Err(Error::shape(
                format!("{} column names", inputs.cols()),
                columns.len(),
            ));
        }
        if !inputs.all_finite() || targets.iter().any(|t| !t.is_finite()) {
            return Err(Error::precondition("dataset contains non-finite values"));
        }
        Ok(FidelityDataset {
            inputs,
            targets,
            level,
            columns,
        })
    }

    pub fn len(&self) -> usize {
        self.targets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.targets.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.inputs.cols()
    }

    pub fn subset(&self, idx: &[usize]) -> FidelityDataset {
        FidelityDataset {
            inputs: self.inputs.select_rows(idx),
            targets: idx.iter().map(|&i| self.targets[i]).collect(),
            level: self.level,
            columns: self.columns.clone(),
        }
    }

    pub fn relabel(mut self, level: FidelityLevel) -> FidelityDataset {
        self.level = level;
        self
    }
}

/// Per-column affine standardization `(v - shift) / scale` fit on training data.
#[derive(Debug, Clone, PartialEq)]
pub struct Standardizer {
    pub shift: Vec<f64>,
    pub scale: Vec<f64>,
}

impl Standardizer {
    /// Columns with (near) zero spread get unit scale.
    pub fn fit(m: &Matrix) -> Standardizer {
        let n = m.rows();
        let mut shift = vec![0.0; m.cols()];
        let mut scale = vec![1.0; m.cols()];
        if n == 0 {
            return Standardizer { shift, scale };
        }
        for j in 0..m.cols() {
            let col = m.col_values(j);
            let mean = col.iter().sum::<f64>() / n as f64;
            let var = col.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n as f64;
            let sd = var.sqrt();
            shift[j] = mean;
            scale[j] = if sd > 1e-12 * mean.abs().max(1.0) { sd } else { 1.0 };
        }
        Standardizer { shift, scale }
    }

    pub fn fit_vec(v: &[f64]) -> Standardizer {
        Self::fit(&Matrix::column(v))
    }

    pub fn identity(cols: usize) -> Standardizer {
        Standardizer {
            shift: vec![0.0; cols],
            scale: vec![1.0; cols],
        }
    }

    pub fn dim(&self) -> usize {
        self.shift.len()
    }

    pub fn transform(&self, m: &Matrix) -> Result<Matrix> {
        if m.cols() != self.dim() {
            return Err(Error::shape(format!("{} columns", self.dim()), m.cols()));
        }
        let mut out = m.clone();
        for i in 0..out.rows() {
            for (j, v) in out.row_mut(i).iter_mut().enumerate() {
                *v = (*v - self.shift[j]) / self.scale[j];
            }
        }
        Ok(out)
    }

    /// Scalar helpers for single-column (target) scalers.
    pub fn forward(&self, v: f64) -> f64 {
        (v - self.shift[0]) / self.scale[0]
    }

    pub fn inverse(&self, v: f64) -> f64 {
        v * self.scale[0] + self.shift[0]
    }

    pub fn forward_vec(&self, v: &[f64]) -> Vec<f64> {
        v.iter().map(|&x| self.forward(x)).collect()
    }

    pub fn inverse_vec(&self, v: &[f64]) -> Vec<f64> {
        v.iter().map(|&x| self.inverse(x)).collect()
    }
}
