//! Exhaustive grid search with mean-RMSE selection.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use super::metrics::rmse;
use crate::data::format_float;
use crate::dataset::FidelityDataset;
use crate::error::{Error, Result};
use crate::mf::{fit_method, MethodId, MethodSettings, MfWeights};
use crate::nn::MlpConfig;

pub const BASE_LAYERS: [usize; 3] = [2, 3, 4];
pub const BASE_WIDTHS: [usize; 4] = [16, 32, 64, 128];
pub const BASE_LRS: [f64; 3] = [1e-4, 5e-4, 1e-3];
pub const ALPHA_GRID: [f64; 6] = [1e-4, 5e-4, 1e-3, 5e-3, 1e-2, 5e-2];
pub const LAMBDA_GRID: [f64; 6] = [1e-1, 1e-5, 1e-4, 5e-4, 1e-3, 3e-3];
pub const W_H_GRID: [f64; 3] = [0.5, 0.6, 0.7];
pub const W_M_GRID: [f64; 2] = [0.2, 0.3];
pub const LAMBDA_GRID_3F: [f64; 3] = [1e-5, 1e-4, 1e-3];
pub const TUNING_EPOCHS: usize = 500;
pub const FINAL_EPOCHS: usize = 2000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GridStage {
    /// Architecture and learning rate.
    Base,
    /// Two-fidelity loss weight α and penalty λ at a fixed architecture.
    AlphaLambda,
    /// Three-fidelity weights and penalty at a fixed architecture.
    Weights3f,
}

impl GridStage {
    pub fn as_str(self) -> &'static str {
        match self {
            GridStage::Base => "base",
            GridStage::AlphaLambda => "alpha_lambda",
            GridStage::Weights3f => "weights3f",
        }
    }

    /// Errors unless the stage makes sense for `method`.
    pub fn check_method(self, method: MethodId) -> Result<()> {
        let ok = match self {
            GridStage::Base => method.is_neural(),
            GridStage::AlphaLambda => method.is_weighted() && method.fidelities() == 2,
            GridStage::Weights3f => method.is_weighted() && method.fidelities() == 3,
        };
        if ok {
            return Ok(());
        }
        let why = match self {
            GridStage::Base => "its hyperparameters are fit by marginal likelihood",
            GridStage::AlphaLambda => "it has no two-fidelity loss weight",
            GridStage::Weights3f => "it has no three-fidelity loss weights",
        };
        Err(Error::Config(format!("stage {} does not apply to {method}: {why}", self.as_str())))
    }
}

impl fmt::Display for GridStage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for GridStage {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "base" => Ok(GridStage::Base),
            "alpha_lambda" => Ok(GridStage::AlphaLambda),
            "weights3f" => Ok(GridStage::Weights3f),
            other => Err(Error::Config(format!(
                "unknown grid stage `{other}` (expected base, alpha_lambda or weights3f)"
            ))),
        }
    }
}

/// One grid configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct GridPoint {
    pub layers: usize,
    pub width: usize,
    pub learning_rate: f64,
    /// `None` uses the stage-one defaults of the method.
    pub weights: Option<MfWeights>,
    pub lambda: f64,
}

impl GridPoint {
    pub fn architecture(layers: usize, width: usize, learning_rate: f64) -> GridPoint {
        GridPoint {
            layers,
            width,
            learning_rate,
            weights: None,
            lambda: 0.0,
        }
    }

    pub fn settings(&self, epochs: usize, seed: u64) -> MethodSettings {
        let mlp = MlpConfig::uniform(self.layers, self.width, self.learning_rate, epochs)
            .with_seed(seed)
            .with_l2(self.lambda);
        let mut s = MethodSettings::new(mlp);
        s.weights = self.weights;
        s
    }

    /// Selection order after mean RMSE: fewer layers, smaller width, larger learning rate.
    fn tie_break(&self, other: &GridPoint) -> Ordering {
        self.layers
            .cmp(&other.layers)
            .then(self.width.cmp(&other.width))
            .then(other.learning_rate.total_cmp(&self.learning_rate))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GridSpec {
    pub stage: GridStage,
    /// Architecture held fixed by the second-stage grids.
    pub base: GridPoint,
    pub epochs: usize,
    pub seed: u64,
}

impl GridSpec {
    pub fn new(stage: GridStage) -> GridSpec {
        GridSpec {
            stage,
            base: GridPoint::architecture(2, 32, 1e-3),
            epochs: TUNING_EPOCHS,
            seed: 0,
        }
    }

    pub fn points(&self) -> Vec<GridPoint> {
        let mut out = Vec::new();
        match self.stage {
            GridStage::Base => {
                for l in BASE_LAYERS {
                    for w in BASE_WIDTHS {
                        for lr in BASE_LRS {
                            out.push(GridPoint::architecture(l, w, lr));
                        }
                    }
                }
            }
            GridStage::AlphaLambda => {
                for a in ALPHA_GRID {
                    for lam in LAMBDA_GRID {
                        out.push(GridPoint {
                            weights: Some(MfWeights::TwoLevel { alpha: a }),
                            lambda: lam,
                            ..self.base.clone()
                        });
                    }
                }
            }
            GridStage::Weights3f => {
                for wh in W_H_GRID {
                    for wm in W_M_GRID {
                        let w = MfWeights::from_hm(wh, wm).expect("grid weights lie on the simplex");
                        for lam in LAMBDA_GRID_3F {
                            out.push(GridPoint {
                                weights: Some(w),
                                lambda: lam,
                                ..self.base.clone()
                            });
                        }
                    }
                }
            }
        }
        out
    }
}

/// Training datasets (lowest to highest fidelity) and a held-out set for one problem.
#[derive(Debug, Clone)]
pub struct TuneTask {
    pub name: String,
    pub train: Vec<FidelityDataset>,
    pub test: FidelityDataset,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GridRow {
    pub index: usize,
    pub point: GridPoint,
    /// Test RMSE per task; infinite when training diverged.
    pub task_rmse: Vec<f64>,
    pub mean_rmse: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GridOutcome {
    pub rows: Vec<GridRow>,
    pub best: usize,
}

impl GridOutcome {
    pub fn winner(&self) -> &GridRow {
        &self.rows[self.best]
    }
}

/// Scores every point with `eval` (one RMSE per task) in parallel and picks the
/// lowest mean RMSE. A divergent configuration scores `+inf`.
pub fn search<F>(points: Vec<GridPoint>, eval: F) -> Result<GridOutcome>
where
    F: Fn(&GridPoint) -> Result<Vec<f64>> + Sync,
{
    if points.is_empty() {
        return Err(Error::precondition("empty grid"));
    }
    let rows = points
        .into_par_iter()
        .enumerate()
        .map(|(index, point)| {
            let task_rmse = match eval(&point) {
                Ok(v) => v.into_iter().map(|e| if e.is_finite() { e } else { f64::INFINITY }).collect(),
                Err(Error::Divergence { .. }) => vec![f64::INFINITY],
                Err(e) => return Err(e),
            };
            let mean_rmse = if task_rmse.is_empty() {
                f64::INFINITY
            } else {
                task_rmse.iter().sum::<f64>() / task_rmse.len() as f64
            };
            Ok(GridRow {
                index,
                point,
                task_rmse,
                mean_rmse,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let best = rows
        .iter()
        .min_by(|a, b| {
            a.mean_rmse
                .total_cmp(&b.mean_rmse)
                .then_with(|| a.point.tie_break(&b.point))
                .then(a.index.cmp(&b.index))
        })
        .map(|r| r.index)
        .unwrap();
    Ok(GridOutcome { rows, best })
}

/// Runs one tuning stage of `method` over `tasks`.
pub fn grid_search(method: MethodId, spec: &GridSpec, tasks: &[TuneTask]) -> Result<GridOutcome> {
    spec.stage.check_method(method)?;
    if tasks.is_empty() {
        return Err(Error::precondition("no tuning tasks"));
    }
    for t in tasks {
        if t.train.len() != method.fidelities() {
            return Err(Error::Config(format!(
                "task {} provides {} fidelity levels; {method} needs {}",
                t.name,
                t.train.len(),
                method.fidelities()
            )));
        }
    }
    search(spec.points(), |p| {
        let settings = p.settings(spec.epochs, spec.seed);
        let mut out = Vec::with_capacity(tasks.len());
        for t in tasks {
            let train: Vec<&FidelityDataset> = t.train.iter().collect();
            let model = fit_method(method, &settings, &train)?;
            let pred = model.predict(&t.test.inputs)?;
            out.push(rmse(&pred, &t.test.targets)?);
        }
        Ok(out)
    })
}

/// Grid ledger as CSV; one row per configuration in visiting order.
pub fn grid_ledger_csv(outcome: &GridOutcome, task_names: &[String]) -> String {
    let mut s = String::from("index,layers,width,learning_rate,alpha,w_l,w_m,w_h,lambda,mean_rmse");
    for n in task_names {
        s.push_str(&format!(",rmse_{n}"));
    }
    s.push('\n');
    let opt = |v: Option<f64>| v.map(format_float).unwrap_or_default();
    for r in &outcome.rows {
        let (a, wl, wm, wh) = match r.point.weights {
            Some(MfWeights::TwoLevel { alpha }) => (Some(alpha), None, None, None),
            Some(MfWeights::ThreeLevel { w_l, w_m, w_h }) => (None, Some(w_l), Some(w_m), Some(w_h)),
            None => (None, None, None, None),
        };
        s.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{}",
            r.index,
            r.point.layers,
            r.point.width,
            format_float(r.point.learning_rate),
            opt(a),
            opt(wl),
            opt(wm),
            opt(wh),
            format_float(r.point.lambda),
            fmt_score(r.mean_rmse)
        ));
        for k in 0..task_names.len().max(r.task_rmse.len()) {
            s.push(',');
            s.push_str(&fmt_score(r.task_rmse.get(k).copied().unwrap_or(f64::INFINITY)));
        }
        s.push('\n');
    }
    s
}

fn fmt_score(v: f64) -> String {
    if v.is_finite() {
        format_float(v)
    } else {
        "inf".into()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_cardinalities() {
        assert_eq!(GridSpec::new(GridStage::Base).points().len(), 36);
        assert_eq!(GridSpec::new(GridStage::AlphaLambda).points().len(), 36);
        let w = GridSpec::new(GridStage::Weights3f).points();
        assert_eq!(w.len(), 18);
        for p in &w {
            let hw = p.weights.unwrap().head_weights().unwrap();
            assert!((hw.iter().sum::<f64>() - 1.0).abs() <= 1e-12);
        }
    }

    #[test]
    fn single_point_grid_returns_it() {
        let p = GridPoint::architecture(3, 16, 5e-4);
        let out = search(vec![p.clone()], |_| Ok(vec![1.0])).unwrap();
        assert_eq!(out.winner().point, p);
    }

    #[test]
    fn divergent_configuration_loses() {
        let pts = vec![GridPoint::architecture(2, 16, 1e-3), GridPoint::architecture(2, 32, 1e-3)];
        let out = search(pts, |p| {
            if p.width == 16 {
                Err(Error::Divergence { epoch: 3, loss: f64::NAN })
            } else {
                Ok(vec![5.0])
            }
        })
        .unwrap();
        assert_eq!(out.winner().point.width, 32);
        assert!(out.rows[0].mean_rmse.is_infinite());
        assert!(grid_ledger_csv(&out, &["t".into()]).contains(",inf"));
    }

    #[test]
    fn ties_prefer_cheaper_models() {
        let pts = vec![
            GridPoint::architecture(3, 16, 1e-3),
            GridPoint::architecture(2, 64, 1e-4),
            GridPoint::architecture(2, 16, 1e-4),
            GridPoint::architecture(2, 16, 1e-3),
        ];
        let out = search(pts, |_| Ok(vec![1.0])).unwrap();
        assert_eq!(out.best, 3);
    }

    #[test]
    fn stage_arity() {
        assert!(GridStage::AlphaLambda.check_method(MethodId::Delta).is_err());
        assert!(GridStage::AlphaLambda.check_method(MethodId::Intermediate).is_ok());
        assert!(GridStage::Weights3f.check_method(MethodId::Intermediate).is_err());
        assert!(GridStage::Weights3f.check_method(MethodId::GpMimic3f).is_ok());
        assert!(GridStage::Base.check_method(MethodId::MfGp).is_err());
    }
}
