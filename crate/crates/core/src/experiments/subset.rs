use std::fmt;
use std::str::FromStr;

use crate::data::{OncOutput, ONC_INPUTS};
use crate::dataset::FidelityDataset;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum InputSubset {
    All,
    Dominant,
    NonDominant,
}

impl InputSubset {
    pub const ALL: [InputSubset; 3] = [InputSubset::All, InputSubset::Dominant, InputSubset::NonDominant];

    pub fn as_str(self) -> &'static str {
        match self {
            InputSubset::All => "all",
            InputSubset::Dominant => "dominant",
            InputSubset::NonDominant => "nondominant",
        }
    }
}

impl fmt::Display for InputSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for InputSubset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().replace(['-', '_'], "").as_str() {
            "all" => Ok(InputSubset::All),
            "dominant" => Ok(InputSubset::Dominant),
            "nondominant" => Ok(InputSubset::NonDominant),
            _ => Err(Error::Config(format!(
                "unknown input subset `{s}` (expected all, dominant or nondominant)"
            ))),
        }
    }
}

/// Inputs identified as driving each output.
pub fn dominant_inputs(output: OncOutput) -> &'static [&'static str] {
    match output {
        OncOutput::TimeToOnc => &["heated_temp_k"],
        OncOutput::TempAfterOnc => &["heated_temp_k", "unheated_htc"],
    }
}

/// Column names of `subset` for `output`, in schema order.
pub fn subset_columns(output: OncOutput, subset: InputSubset) -> Vec<&'static str> {
    let dom = dominant_inputs(output);
    ONC_INPUTS
        .iter()
        .map(|(n, _, _)| *n)
        .filter(|n| match subset {
            InputSubset::All => true,
            InputSubset::Dominant => dom.contains(n),
            InputSubset::NonDominant => !dom.contains(n),
        })
        .collect()
}

/// Keeps only the input columns of `subset`, selected by name.
pub fn input_subset(data: &FidelityDataset, output: OncOutput, subset: InputSubset) -> Result<FidelityDataset> {
    let wanted = subset_columns(output, subset);
    let idx = wanted
        .iter()
        .map(|w| {
            data.columns.iter().position(|c| c == w).ok_or_else(|| Error::Schema {
                row: 0,
                column: w.to_string(),
                message: "column required by the input subset is missing".into(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    FidelityDataset::with_columns(
        data.inputs.select_cols(&idx),
        data.targets.clone(),
        data.level,
        wanted.iter().map(|s| s.to_string()).collect(),
    )
}
