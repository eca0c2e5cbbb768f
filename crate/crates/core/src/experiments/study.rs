//! Cost-matched study: every (method, pairing, budget) run trains on rows
//! drawn from fixed training pools and is scored on a fixed test set.

use std::io::Read;
use std::time::Instant;

use rayon::prelude::*;

use super::budget::{allocation, BudgetAllocation, Pairing};
use super::metrics::{r2, rmse};
use super::split::{make_split, permutation, SplitKind, SplitPlan, SPLIT_TOTAL};
use crate::data::format_float;
use crate::dataset::{FidelityDataset, FidelityLevel};
use crate::error::{Error, Result};
use crate::mf::{fit_method, MethodId, MethodSettings};

/// One 1000-row dataset per available fidelity level.
#[derive(Debug, Clone, Default)]
pub struct StudyData {
    pub lf: Option<FidelityDataset>,
    pub mf: Option<FidelityDataset>,
    pub hf: Option<FidelityDataset>,
}

impl StudyData {
    pub fn get(&self, level: FidelityLevel) -> Result<&FidelityDataset> {
        let d = match level {
            FidelityLevel::Lf => &self.lf,
            FidelityLevel::Mf => &self.mf,
            FidelityLevel::Hf => &self.hf,
        };
        let d = d
            .as_ref()
            .ok_or_else(|| Error::Config(format!("no {level} dataset supplied")))?;
        if d.len() != SPLIT_TOTAL {
            return Err(Error::shape(format!("{SPLIT_TOTAL} {level} rows"), d.len()));
        }
        Ok(d)
    }
}

#[derive(Debug, Clone)]
pub struct StudySpec {
    pub methods: Vec<(MethodId, MethodSettings)>,
    pub pairings: Vec<Pairing>,
    pub budgets: Vec<usize>,
    pub seed: u64,
    pub subset: String,
    pub output: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunResult {
    pub method: MethodId,
    pub pairing: Pairing,
    pub budget: usize,
    pub subset: String,
    pub output: String,
    pub seed: u64,
    pub rmse: f64,
    pub r2: f64,
    pub wall_time_s: f64,
    pub n_lf: usize,
    pub n_mf: usize,
    pub n_hf: usize,
}

impl RunResult {
    pub fn allocation(&self) -> BudgetAllocation {
        BudgetAllocation::new(self.n_lf, self.n_mf, self.n_hf)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Role {
    Train,
    Test,
}

impl Role {
    pub fn as_str(self) -> &'static str {
        match self {
            Role::Train => "train",
            Role::Test => "test",
        }
    }
}

/// Row indices a run used from one fidelity file.
#[derive(Debug, Clone, PartialEq)]
pub struct IndexRecord {
    pub method: MethodId,
    pub pairing: Pairing,
    pub budget: usize,
    pub seed: u64,
    pub level: FidelityLevel,
    pub role: Role,
    pub rows: Vec<usize>,
}

#[derive(Debug, Clone, Default)]
pub struct StudyOutput {
    pub results: Vec<RunResult>,
    pub indices: Vec<IndexRecord>,
}

/// Row selections for one seed, fixed before any training.
#[derive(Debug, Clone)]
pub struct StudyPlan {
    pub hf: SplitPlan,
    pub mf: SplitPlan,
    pub lf_order: Vec<usize>,
}

impl StudyPlan {
    pub fn new(seed: u64) -> Result<StudyPlan> {
        Ok(StudyPlan {
            hf: make_split(SPLIT_TOTAL, SplitKind::Hf200_800, seed)?,
            mf: make_split(SPLIT_TOTAL, SplitKind::Mf500_500, seed.wrapping_add(1))?,
            lf_order: permutation(SPLIT_TOTAL, seed.wrapping_add(2)),
        })
    }

    pub fn train_rows(&self, level: FidelityLevel, n: usize) -> Result<&[usize]> {
        match level {
            FidelityLevel::Hf => self.hf.train_rows(n),
            FidelityLevel::Mf => self.mf.train_rows(n),
            FidelityLevel::Lf => {
                if n > self.lf_order.len() {
                    return Err(Error::Allocation {
                        what: "LF".into(),
                        requested: n,
                        available: self.lf_order.len(),
                    });
                }
                Ok(&self.lf_order[..n])
            }
        }
    }

    /// Test rows of the pairing's top level: the MF test set when MF is the
    /// top level, else the HF test set.
    pub fn test_rows(&self, pairing: Pairing) -> &[usize] {
        match pairing.top() {
            FidelityLevel::Mf => &self.mf.test,
            _ => &self.hf.test,
        }
    }
}

pub fn check_arity(method: MethodId, pairing: Pairing) -> Result<()> {
    if method.fidelities() != pairing.levels().len() {
        return Err(Error::Config(format!(
            "{method} is a {}-fidelity method and cannot run the {pairing} pairing",
            method.fidelities()
        )));
    }
    Ok(())
}

struct Job<'a> {
    method: MethodId,
    settings: &'a MethodSettings,
    pairing: Pairing,
    budget: usize,
    alloc: BudgetAllocation,
}

pub fn run_cost_study(data: &StudyData, spec: &StudySpec) -> Result<StudyOutput> {
    let plan = StudyPlan::new(spec.seed)?;
    let mut jobs = Vec::new();
    for (method, settings) in &spec.methods {
        for &pairing in &spec.pairings {
            check_arity(*method, pairing)?;
            for level in pairing.levels() {
                data.get(*level)?;
            }
            for &budget in &spec.budgets {
                let alloc = allocation(pairing, budget)?;
                for &level in pairing.levels() {
                    plan.train_rows(level, alloc.count(level))?;
                }
                jobs.push(Job {
                    method: *method,
                    settings,
                    pairing,
                    budget,
                    alloc,
                });
            }
        }
    }

    let runs = jobs
        .par_iter()
        .map(|job| run_one(data, &plan, spec, job))
        .collect::<Result<Vec<_>>>()?;
    let mut out = StudyOutput::default();
    for (r, idx) in runs {
        out.results.push(r);
        out.indices.extend(idx);
    }
    Ok(out)
}

fn run_one(
    data: &StudyData,
    plan: &StudyPlan,
    spec: &StudySpec,
    job: &Job<'_>,
) -> Result<(RunResult, Vec<IndexRecord>)> {
    let record = |level, role, rows: &[usize]| IndexRecord {
        method: job.method,
        pairing: job.pairing,
        budget: job.budget,
        seed: spec.seed,
        level,
        role,
        rows: rows.to_vec(),
    };
    let mut indices = Vec::new();
    let mut train = Vec::new();
    for &level in job.pairing.levels() {
        let rows = plan.train_rows(level, job.alloc.count(level))?;
        indices.push(record(level, Role::Train, rows));
        train.push(data.get(level)?.subset(rows));
    }
    let top = job.pairing.top();
    let test_rows = plan.test_rows(job.pairing);
    indices.push(record(top, Role::Test, test_rows));
    let test = data.get(top)?.subset(test_rows);

    let mut settings = job.settings.clone();
    settings.mlp.seed = spec.seed;
    let start = Instant::now();
    let refs: Vec<&FidelityDataset> = train.iter().collect();
    let model = fit_method(job.method, &settings, &refs)?;
    let pred = model.predict(&test.inputs)?;
    let wall = start.elapsed().as_secs_f64();
    let result = RunResult {
        method: job.method,
        pairing: job.pairing,
        budget: job.budget,
        subset: spec.subset.clone(),
        output: spec.output.clone(),
        seed: spec.seed,
        rmse: rmse(&pred, &test.targets)?,
        r2: r2(&pred, &test.targets)?,
        wall_time_s: wall,
        n_lf: job.alloc.n_lf,
        n_mf: job.alloc.n_mf,
        n_hf: job.alloc.n_hf,
    };
    Ok((result, indices))
}

pub const RESULTS_HEADER: [&str; 12] = [
    "method",
    "pairing",
    "budget",
    "subset",
    "output",
    "seed",
    "rmse",
    "r2",
    "wall_time_s",
    "n_lf",
    "n_mf",
    "n_hf",
];

pub fn results_csv(results: &[RunResult]) -> String {
    let mut s = RESULTS_HEADER.join(",");
    s.push('\n');
    for r in results {
        s.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{},{}\n",
            r.method,
            r.pairing,
            r.budget,
            r.subset,
            r.output,
            r.seed,
            format_float(r.rmse),
            format_float(r.r2),
            format_float(r.wall_time_s),
            r.n_lf,
            r.n_mf,
            r.n_hf
        ));
    }
    s
}

/// Parses a results ledger written by [`results_csv`]; columns matched by name.
pub fn parse_results_csv<R: Read>(reader: R) -> Result<Vec<RunResult>> {
    let table = crate::data::Table::read(reader)?;
    let idx: Vec<usize> = RESULTS_HEADER
        .iter()
        .map(|h| table.index_of(h))
        .collect::<Result<_>>()?;
    let bad = |row: usize, col: &str, msg: String| Error::Schema {
        row,
        column: col.to_string(),
        message: msg,
    };
    let mut out = Vec::with_capacity(table.rows.len());
    for (row, rec) in &table.rows {
        let f = |k: usize| -> Result<f64> {
            rec[idx[k]]
                .parse::<f64>()
                .map_err(|e| bad(*row, RESULTS_HEADER[k], e.to_string()))
        };
        let u = |k: usize| -> Result<u64> {
            rec[idx[k]]
                .parse::<u64>()
                .map_err(|e| bad(*row, RESULTS_HEADER[k], e.to_string()))
        };
        let usz = |k: usize| -> Result<usize> {
            usize::try_from(u(k)?).map_err(|e| bad(*row, RESULTS_HEADER[k], e.to_string()))
        };
        out.push(RunResult {
            method: rec[idx[0]].parse().map_err(|e: Error| bad(*row, "method", e.to_string()))?,
            pairing: rec[idx[1]].parse().map_err(|e: Error| bad(*row, "pairing", e.to_string()))?,
            budget: usz(2)?,
            subset: rec[idx[3]].to_string(),
            output: rec[idx[4]].to_string(),
            seed: u(5)?,
            rmse: f(6)?,
            r2: f(7)?,
            wall_time_s: f(8)?,
            n_lf: usz(9)?,
            n_mf: usz(10)?,
            n_hf: usz(11)?,
        });
    }
    Ok(out)
}

pub fn indices_csv(indices: &[IndexRecord]) -> String {
    let mut s = String::from("method,pairing,budget,seed,fidelity,role,rows\n");
    for r in indices {
        let rows: Vec<String> = r.rows.iter().map(|i| i.to_string()).collect();
        s.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            r.method,
            r.pairing,
            r.budget,
            r.seed,
            r.level,
            r.role.as_str(),
            rows.join(";")
        ));
    }
    s
}
