//! Multifidelity fusion regressors.
//!
//! Every fit function takes its datasets ordered from lowest to highest
//! fidelity. Level tags must be strictly increasing, so an MF+HF pairing
//! passes `[mf, hf]` and an LF+MF pairing treats MF as the top level.

mod gpfusion;
mod neural;

use std::fmt;
use std::str::FromStr;

pub use gpfusion::fit_mfgp;
pub use neural::{fit_delta, fit_flag, fit_gpmimic, fit_intermediate, fit_threestep, fit_twostep};

use crate::dataset::FidelityDataset;
use crate::error::{Error, Result};
use crate::gp::{GpConfig, GpModel, KernelKind};
use crate::matrix::Matrix;
use crate::nn::{MlpConfig, MlpModel};

/// Learning rate of the affine stage in Three-Step fits built by [`fit_method`].
pub const LINEAR_STAGE_LR: f64 = 1e-2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MethodId {
    GpMimic,
    MfGp,
    Delta,
    Flag,
    Intermediate,
    TwoStep,
    ThreeStep,
    GpMimic3f,
    Flag3f,
    Intermediate3f,
}

impl MethodId {
    pub const ALL: [MethodId; 10] = [
        MethodId::GpMimic,
        MethodId::MfGp,
        MethodId::Delta,
        MethodId::Flag,
        MethodId::Intermediate,
        MethodId::TwoStep,
        MethodId::ThreeStep,
        MethodId::GpMimic3f,
        MethodId::Flag3f,
        MethodId::Intermediate3f,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            MethodId::GpMimic => "gpmimic",
            MethodId::MfGp => "mfgp",
            MethodId::Delta => "delta",
            MethodId::Flag => "flag",
            MethodId::Intermediate => "intermediate",
            MethodId::TwoStep => "twostep",
            MethodId::ThreeStep => "threestep",
            MethodId::GpMimic3f => "gpmimic3f",
            MethodId::Flag3f => "flag3f",
            MethodId::Intermediate3f => "intermediate3f",
        }
    }

    /// Number of fidelity levels the method consumes.
    pub fn fidelities(self) -> usize {
        match self {
            MethodId::GpMimic3f | MethodId::Flag3f | MethodId::Intermediate3f => 3,
            _ => 2,
        }
    }

    /// Methods trained with a fidelity-weighted loss (α or w_l/w_m/w_h).
    pub fn is_weighted(self) -> bool {
        matches!(
            self,
            MethodId::GpMimic | MethodId::Intermediate | MethodId::GpMimic3f | MethodId::Intermediate3f
        )
    }

    pub fn is_neural(self) -> bool {
        self != MethodId::MfGp
    }
}

impl fmt::Display for MethodId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for MethodId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase();
        MethodId::ALL
            .into_iter()
            .find(|m| m.as_str() == key)
            .ok_or_else(|| {
                let valid: Vec<_> = MethodId::ALL.iter().map(|m| m.as_str()).collect();
                Error::Config(format!("unknown method '{s}'; valid: {}", valid.join(", ")))
            })
    }
}

/// Per-fidelity loss weights.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MfWeights {
    /// `alpha * MSE_HF + (1 - alpha) * MSE_LF`.
    TwoLevel { alpha: f64 },
    ThreeLevel { w_l: f64, w_m: f64, w_h: f64 },
}

impl MfWeights {
    pub fn two_level(alpha: f64) -> Result<MfWeights> {
        if !(0.0..=1.0).contains(&alpha) {
            return Err(Error::precondition(format!("alpha must lie in [0, 1], got {alpha}")));
        }
        Ok(MfWeights::TwoLevel { alpha })
    }

    /// Errors unless the weights are nonnegative and sum to one within 1e-12.
    pub fn three_level(w_l: f64, w_m: f64, w_h: f64) -> Result<MfWeights> {
        let w_l = if w_l.abs() <= 1e-12 { 0.0 } else { w_l };
        if [w_l, w_m, w_h].iter().any(|w| !(*w >= 0.0)) {
            return Err(Error::precondition(format!(
                "fidelity weights must be nonnegative, got ({w_l}, {w_m}, {w_h})"
            )));
        }
        let sum = w_l + w_m + w_h;
        if (sum - 1.0).abs() > 1e-12 {
            return Err(Error::precondition(format!(
                "fidelity weights must sum to 1, got {sum}"
            )));
        }
        Ok(MfWeights::ThreeLevel { w_l, w_m, w_h })
    }

    /// Three-level weights with `w_l = 1 - w_h - w_m`.
    pub fn from_hm(w_h: f64, w_m: f64) -> Result<MfWeights> {
        Self::three_level(1.0 - w_h - w_m, w_m, w_h)
    }

    pub fn levels(&self) -> usize {
        match self {
            MfWeights::TwoLevel { .. } => 2,
            MfWeights::ThreeLevel { .. } => 3,
        }
    }

    /// Loss weights in head order `[LF, (MF), HF]`, revalidated.
    pub fn head_weights(&self) -> Result<Vec<f64>> {
        match *self {
            MfWeights::TwoLevel { alpha } => {
                Self::two_level(alpha)?;
                Ok(vec![1.0 - alpha, alpha])
            }
            MfWeights::ThreeLevel { w_l, w_m, w_h } => {
                Self::three_level(w_l, w_m, w_h)?;
                Ok(vec![w_l, w_m, w_h])
            }
        }
    }

    /// Stage-one defaults: α = 0.1, or (w_l, w_m, w_h) = (0.1, 0.2, 0.7).
    pub fn default_for(levels: usize) -> MfWeights {
        if levels == 3 {
            MfWeights::ThreeLevel {
                w_l: 0.1,
                w_m: 0.2,
                w_h: 0.7,
            }
        } else {
            MfWeights::TwoLevel { alpha: 0.1 }
        }
    }
}

/// Fitted sub-models of each method.
#[derive(Debug, Clone)]
pub enum Components {
    Delta { lf: MlpModel, residual: MlpModel },
    TwoStep { lf: MlpModel, hf: MlpModel },
    ThreeStep { lf: MlpModel, linear: MlpModel, nonlinear: MlpModel },
    /// Single network over inputs plus fidelity indicator column(s).
    Flag { net: MlpModel, levels: usize },
    /// Jointly trained multi-output network (Intermediate, GPmimic).
    Joint { net: MlpModel },
    MfGp { lf: GpModel, rho: f64, residual: GpModel },
}

#[derive(Debug, Clone)]
pub struct MfModel {
    pub method: MethodId,
    pub components: Components,
    pub fidelities: usize,
    pub input_dim: usize,
    /// Seconds spent fitting.
    pub wall_time: f64,
    /// A sequential stage was fit on a single high-fidelity row.
    pub degenerate: bool,
    /// MF-GP fell back to ρ = 0 because the LF mean vanished at every HF input.
    pub rho_fallback: bool,
}

/// Indicator encoding of level `k` out of `levels` for the Flag network.
pub(crate) fn flag_columns(levels: usize, k: usize) -> Vec<f64> {
    if levels == 2 {
        vec![k as f64]
    } else {
        (0..levels).map(|j| if j == k { 1.0 } else { 0.0 }).collect()
    }
}

pub(crate) fn append_columns(x: &Matrix, values: &[f64]) -> Matrix {
    let mut out = x.clone();
    for &v in values {
        out = out
            .with_column(&vec![v; x.rows()])
            .expect("row count matches");
    }
    out
}

impl MfModel {
    pub fn predict(&self, inputs: &Matrix) -> Result<Vec<f64>> {
        if inputs.cols() != self.input_dim {
            return Err(Error::shape(format!("{} input columns", self.input_dim), inputs.cols()));
        }
        match &self.components {
            Components::Delta { lf, residual } => {
                let fl = lf.predict(inputs)?;
                let d = residual.predict(&inputs.with_column(&fl)?)?;
                Ok(fl.iter().zip(&d).map(|(a, b)| a + b).collect())
            }
            Components::TwoStep { lf, hf } => {
                let fl = lf.predict(inputs)?;
                hf.predict(&inputs.with_column(&fl)?)
            }
            Components::ThreeStep { lf, linear, nonlinear } => {
                let z = inputs.with_column(&lf.predict(inputs)?)?;
                let ylin = linear.predict(&z)?;
                nonlinear.predict(&z.with_column(&ylin)?)
            }
            Components::Flag { levels, .. } => self.predict_level(inputs, levels - 1),
            Components::Joint { net } => net.predict(inputs),
            Components::MfGp { lf, rho, residual } => {
                let mu_l = lf.predict_mean(inputs)?;
                let mu_d = residual.predict_mean(inputs)?;
                Ok(mu_l.iter().zip(&mu_d).map(|(l, d)| rho * l + d).collect())
            }
        }
    }

    /// Output for fidelity level `k` (0 = lowest) of all-in-one networks.
    pub fn predict_level(&self, inputs: &Matrix, k: usize) -> Result<Vec<f64>> {
        if inputs.cols() != self.input_dim {
            return Err(Error::shape(format!("{} input columns", self.input_dim), inputs.cols()));
        }
        if k >= self.fidelities {
            return Err(Error::Level {
                level: k.to_string(),
                what: format!("{}-fidelity {} model", self.fidelities, self.method),
            });
        }
        match &self.components {
            Components::Flag { net, levels } => net.predict(&append_columns(inputs, &flag_columns(*levels, k))),
            Components::Joint { net } => net.predict_output(inputs, k),
            _ if k == self.fidelities - 1 => self.predict(inputs),
            _ => Err(Error::precondition(format!(
                "{} exposes only its highest-fidelity prediction",
                self.method
            ))),
        }
    }

    pub fn rho(&self) -> Option<f64> {
        match &self.components {
            Components::MfGp { rho, .. } => Some(*rho),
            _ => None,
        }
    }
}

pub fn mf_predict(model: &MfModel, inputs: &Matrix) -> Result<Vec<f64>> {
    model.predict(inputs)
}

/// Validates a lowest-to-highest list of datasets and returns the input dimension.
pub(crate) fn check_datasets(datasets: &[&FidelityDataset], allowed: &[usize]) -> Result<usize> {
    if !allowed.contains(&datasets.len()) {
        return Err(Error::precondition(format!(
            "expected {} fidelity datasets, got {}",
            allowed.iter().map(|n| n.to_string()).collect::<Vec<_>>().join(" or "),
            datasets.len()
        )));
    }
    let dim = datasets[0].dim();
    for (i, d) in datasets.iter().enumerate() {
        if d.is_empty() {
            return Err(Error::precondition(format!("{} dataset is empty", d.level)));
        }
        if d.dim() != dim {
            return Err(Error::shape(format!("{dim} input columns"), d.dim()));
        }
        if i > 0 && d.level <= datasets[i - 1].level {
            return Err(Error::precondition(format!(
                "datasets must be ordered by increasing fidelity, got {} after {}",
                d.level,
                datasets[i - 1].level
            )));
        }
    }
    Ok(dim)
}

/// Everything needed to fit any method from one tuned configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct MethodSettings {
    /// Tuned architecture; its `l2_lambda` is the λ of every method.
    pub mlp: MlpConfig,
    /// Fidelity weights for weighted methods; `None` uses [`MfWeights::default_for`].
    pub weights: Option<MfWeights>,
    pub gp_restarts: usize,
}

impl MethodSettings {
    pub fn new(mlp: MlpConfig) -> MethodSettings {
        MethodSettings {
            mlp,
            weights: None,
            gp_restarts: 3,
        }
    }

    pub fn with_weights(mut self, w: MfWeights) -> MethodSettings {
        self.weights = Some(w);
        self
    }

    pub fn gp_configs(&self) -> (GpConfig, GpConfig) {
        let lf = GpConfig::new(KernelKind::Matern52)
            .with_seed(self.mlp.seed)
            .with_restarts(self.gp_restarts);
        let res = GpConfig::new(KernelKind::Rbf)
            .with_seed(self.mlp.seed.wrapping_add(1))
            .with_restarts(self.gp_restarts);
        (lf, res)
    }

    /// Three-Step stage configurations: affine stage and one hidden layer of the tuned width.
    pub fn threestep_configs(&self) -> (MlpConfig, MlpConfig) {
        let mut lin = MlpConfig::linear(LINEAR_STAGE_LR, self.mlp.epochs);
        lin.seed = self.mlp.seed;
        lin.l2_lambda = self.mlp.l2_lambda;
        let width = self.mlp.layer_widths.last().copied().unwrap_or(32);
        let mut nl = self.mlp.clone();
        nl.layer_widths = vec![width];
        (lin, nl)
    }
}

/// Fits `method` on datasets ordered lowest to highest fidelity.
pub fn fit_method(method: MethodId, settings: &MethodSettings, datasets: &[&FidelityDataset]) -> Result<MfModel> {
    if datasets.len() != method.fidelities() {
        return Err(Error::Config(format!(
            "{method} takes {} fidelity levels, got {}",
            method.fidelities(),
            datasets.len()
        )));
    }
    let cfg = &settings.mlp;
    let weights = settings
        .weights
        .unwrap_or_else(|| MfWeights::default_for(method.fidelities()));
    match method {
        MethodId::MfGp => {
            let (a, b) = settings.gp_configs();
            fit_mfgp(&a, &b, datasets[0], datasets[1])
        }
        MethodId::Delta => fit_delta(cfg, cfg, datasets[0], datasets[1]),
        MethodId::TwoStep => fit_twostep(cfg, cfg, datasets[0], datasets[1]),
        MethodId::ThreeStep => {
            let (lin, nl) = settings.threestep_configs();
            fit_threestep(cfg, &lin, &nl, datasets[0], datasets[1])
        }
        MethodId::Flag | MethodId::Flag3f => fit_flag(cfg, datasets).map(|m| m.renamed(method)),
        MethodId::Intermediate | MethodId::Intermediate3f => {
            fit_intermediate(cfg, &weights, cfg.l2_lambda, datasets).map(|m| m.renamed(method))
        }
        MethodId::GpMimic | MethodId::GpMimic3f => {
            fit_gpmimic(cfg, &weights, cfg.l2_lambda, datasets).map(|m| m.renamed(method))
        }
    }
}

impl MfModel {
    fn renamed(mut self, method: MethodId) -> MfModel {
        self.method = method;
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn method_ids_round_trip() {
        for m in MethodId::ALL {
            assert_eq!(m.as_str().parse::<MethodId>().unwrap(), m);
        }
        let err = "kriging".parse::<MethodId>().unwrap_err().to_string();
        assert!(err.contains("intermediate3f"));
    }

    #[test]
    fn weight_simplex_is_enforced() {
        assert!(MfWeights::three_level(0.1, 0.2, 0.7).is_ok());
        assert!(MfWeights::three_level(0.2, 0.2, 0.7).is_err());
        assert!(MfWeights::three_level(-0.1, 0.4, 0.7).is_err());
        assert!(MfWeights::two_level(1.5).is_err());
        assert!(MfWeights::two_level(-0.01).is_err());
        // 1 - 0.7 - 0.3 is a tiny negative float, snapped to zero
        let w = MfWeights::from_hm(0.7, 0.3).unwrap();
        assert_eq!(w.head_weights().unwrap()[0], 0.0);
        let bad = MfWeights::TwoLevel { alpha: 2.0 };
        assert!(bad.head_weights().is_err());
    }

    #[test]
    fn flag_encoding() {
        assert_eq!(flag_columns(2, 1), vec![1.0]);
        assert_eq!(flag_columns(3, 1), vec![0.0, 1.0, 0.0]);
    }
}
