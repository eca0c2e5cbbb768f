use std::fmt;
use std::str::FromStr;

use crate::dataset::FidelityLevel;
use crate::error::{Error, Result};

/// Which fidelity levels a run trains on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pairing {
    LfHf,
    LfMf,
    MfHf,
    LfMfHf,
}

impl Pairing {
    pub const ALL: [Pairing; 4] = [Pairing::LfHf, Pairing::LfMf, Pairing::MfHf, Pairing::LfMfHf];

    pub fn as_str(self) -> &'static str {
        match self {
            Pairing::LfHf => "lf+hf",
            Pairing::LfMf => "lf+mf",
            Pairing::MfHf => "mf+hf",
            Pairing::LfMfHf => "lf+mf+hf",
        }
    }

    /// Row label used in the budget table.
    pub fn label(self) -> &'static str {
        match self {
            Pairing::LfHf => "2F (LF + HF)",
            Pairing::LfMf => "2F (LF + MF)",
            Pairing::MfHf => "2F (MF + HF)",
            Pairing::LfMfHf => "3F (LF + MF + HF)",
        }
    }

    /// Levels from lowest to highest; the last one is the prediction target.
    pub fn levels(self) -> &'static [FidelityLevel] {
        use FidelityLevel::*;
        match self {
            Pairing::LfHf => &[Lf, Hf],
            Pairing::LfMf => &[Lf, Mf],
            Pairing::MfHf => &[Mf, Hf],
            Pairing::LfMfHf => &[Lf, Mf, Hf],
        }
    }

    pub fn top(self) -> FidelityLevel {
        *self.levels().last().unwrap()
    }
}

impl fmt::Display for Pairing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Pairing {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key: String = s.trim().to_ascii_lowercase().chars().filter(|c| !c.is_whitespace()).collect();
        Pairing::ALL
            .into_iter()
            .find(|p| p.as_str() == key)
            .ok_or_else(|| Error::Config(format!("unknown pairing `{s}` (expected lf+hf, lf+mf, mf+hf or lf+mf+hf)")))
    }
}

/// Sample counts per level; the cost is always derived.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BudgetAllocation {
    pub n_lf: usize,
    pub n_mf: usize,
    pub n_hf: usize,
}

impl BudgetAllocation {
    pub fn new(n_lf: usize, n_mf: usize, n_hf: usize) -> BudgetAllocation {
        BudgetAllocation { n_lf, n_mf, n_hf }
    }

    pub fn count(&self, level: FidelityLevel) -> usize {
        match level {
            FidelityLevel::Lf => self.n_lf,
            FidelityLevel::Mf => self.n_mf,
            FidelityLevel::Hf => self.n_hf,
        }
    }

    pub fn total_cost(&self) -> usize {
        FidelityLevel::ALL.iter().map(|&l| l.cost() * self.count(l)).sum()
    }
}

pub const BUDGETS: [usize; 4] = [300, 600, 1200, 1800];

/// Allocation for a pairing at one of the standard budgets.
pub fn allocation(pairing: Pairing, budget: usize) -> Result<BudgetAllocation> {
    let (lf, mf, hf) = match (pairing, budget) {
        (Pairing::LfHf, 300) => (200, 0, 25),
        (Pairing::LfMf, 300) => (200, 50, 0),
        (Pairing::MfHf, 300) => (0, 100, 25),
        (Pairing::LfMfHf, 300) => (150, 50, 12),
        (Pairing::LfHf, 600) => (400, 0, 50),
        (Pairing::LfMf, 600) => (400, 100, 0),
        (Pairing::MfHf, 600) => (0, 200, 50),
        (Pairing::LfMfHf, 600) => (300, 100, 25),
        (Pairing::LfHf, 1200) => (800, 0, 100),
        (Pairing::LfMf, 1200) => (800, 200, 0),
        (Pairing::MfHf, 1200) => (0, 400, 100),
        (Pairing::LfMfHf, 1200) => (600, 200, 50),
        (Pairing::LfHf, 1800) => (1000, 0, 200),
        (Pairing::LfMf, 1800) => (1000, 400, 0),
        (Pairing::MfHf, 1800) => (0, 500, 200),
        (Pairing::LfMfHf, 1800) => (1000, 200, 100),
        _ => {
            return Err(Error::Config(format!(
                "no allocation for budget {budget} (expected one of 300, 600, 1200, 1800)"
            )))
        }
    };
    Ok(BudgetAllocation::new(lf, mf, hf))
}

/// Every `(budget, pairing, allocation)` row, budget-major.
pub fn budget_table() -> Vec<(usize, Pairing, BudgetAllocation)> {
    let mut rows = Vec::with_capacity(16);
    for b in BUDGETS {
        for p in Pairing::ALL {
            rows.push((b, p, allocation(p, b).expect("standard budget")));
        }
    }
    rows
}

pub fn budget_table_csv() -> String {
    let mut s = String::from("budget,setup,n_lf,n_mf,n_hf,total_cost\n");
    for (b, p, a) in budget_table() {
        s.push_str(&format!(
            "{b},{},{},{},{},{}\n",
            p.label(),
            a.n_lf,
            a.n_mf,
            a.n_hf,
            a.total_cost()
        ));
    }
    s
}
