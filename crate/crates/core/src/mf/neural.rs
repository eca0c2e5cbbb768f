use std::time::Instant;

use super::{append_columns, check_datasets, flag_columns, Components, MethodId, MfModel, MfWeights};
use crate::dataset::FidelityDataset;
use crate::error::{Error, Result};
use crate::nn::{mlp_fit, mlp_fit_floored, MlpConfig, MlpModel, Objective, Topology};

fn lf_stage(cfg: &MlpConfig, lf: &FidelityDataset) -> Result<MlpModel> {
    mlp_fit(cfg, lf, &Objective::mse(cfg.l2_lambda))
}

/// `(x, f_L(x))` rows at the HF inputs, paired with `targets`.
fn augmented(fl: &[f64], hf: &FidelityDataset, targets: Vec<f64>) -> Result<FidelityDataset> {
    FidelityDataset::new(hf.inputs.with_column(fl)?, targets, hf.level)
}

/// Spread of the quantity a network predicts, in target units.
fn target_spread(net: &MlpModel) -> f64 {
    net.target_scaler().scale[0]
}

fn sequential(method: MethodId, components: Components, dim: usize, n_hf: usize, start: Instant) -> MfModel {
    MfModel {
        method,
        components,
        fidelities: 2,
        input_dim: dim,
        wall_time: start.elapsed().as_secs_f64(),
        degenerate: n_hf == 1,
        rho_fallback: false,
    }
}

/// LF network plus a residual network on `(x, f_L(x))`.
pub fn fit_delta(
    cfg_lf: &MlpConfig,
    cfg_delta: &MlpConfig,
    lf: &FidelityDataset,
    hf: &FidelityDataset,
) -> Result<MfModel> {
    let start = Instant::now();
    let dim = check_datasets(&[lf, hf], &[2])?;
    let lf_net = lf_stage(cfg_lf, lf)?;
    let fl = lf_net.predict(&hf.inputs)?;
    let resid = hf.targets.iter().zip(&fl).map(|(y, f)| y - f).collect();
    let data = augmented(&fl, hf, resid)?;
    let floors = [(dim, target_spread(&lf_net))];
    let residual = mlp_fit_floored(cfg_delta, &data, &Objective::mse(cfg_delta.l2_lambda), &floors)?;
    let c = Components::Delta { lf: lf_net, residual };
    Ok(sequential(MethodId::Delta, c, dim, hf.len(), start))
}

/// LF network, then an HF network on `(x, f_L(x))`.
pub fn fit_twostep(
    cfg_lf: &MlpConfig,
    cfg_hf: &MlpConfig,
    lf: &FidelityDataset,
    hf: &FidelityDataset,
) -> Result<MfModel> {
    let start = Instant::now();
    let dim = check_datasets(&[lf, hf], &[2])?;
    let lf_net = lf_stage(cfg_lf, lf)?;
    let data = augmented(&lf_net.predict(&hf.inputs)?, hf, hf.targets.clone())?;
    let floors = [(dim, target_spread(&lf_net))];
    let hf_net = mlp_fit_floored(cfg_hf, &data, &Objective::mse(cfg_hf.l2_lambda), &floors)?;
    let c = Components::TwoStep { lf: lf_net, hf: hf_net };
    Ok(sequential(MethodId::TwoStep, c, dim, hf.len(), start))
}

/// LF network, an affine map `(x, f_L) -> y_H`, then a shallow network on
/// `(x, f_L, y_lin)`.
pub fn fit_threestep(
    cfg_lf: &MlpConfig,
    cfg_lin: &MlpConfig,
    cfg_nl: &MlpConfig,
    lf: &FidelityDataset,
    hf: &FidelityDataset,
) -> Result<MfModel> {
    let start = Instant::now();
    if !cfg_lin.layer_widths.is_empty() {
        return Err(Error::Config(
            "the linear stage must have no hidden layers".into(),
        ));
    }
    let dim = check_datasets(&[lf, hf], &[2])?;
    let lf_net = lf_stage(cfg_lf, lf)?;
    let data = augmented(&lf_net.predict(&hf.inputs)?, hf, hf.targets.clone())?;
    let fl_floor = (dim, target_spread(&lf_net));
    let linear = mlp_fit_floored(cfg_lin, &data, &Objective::mse(cfg_lin.l2_lambda), &[fl_floor])?;
    let ylin = linear.predict(&data.inputs)?;
    let data2 = FidelityDataset::new(data.inputs.with_column(&ylin)?, hf.targets.clone(), hf.level)?;
    let floors = [fl_floor, (dim + 1, target_spread(&linear))];
    let nonlinear = mlp_fit_floored(cfg_nl, &data2, &Objective::mse(cfg_nl.l2_lambda), &floors)?;
    let c = Components::ThreeStep {
        lf: lf_net,
        linear,
        nonlinear,
    };
    Ok(sequential(MethodId::ThreeStep, c, dim, hf.len(), start))
}

/// One network over pooled rows with fidelity indicator column(s): a single
/// 0/1 column for two levels, one-hot for three.
pub fn fit_flag(cfg: &MlpConfig, datasets: &[&FidelityDataset]) -> Result<MfModel> {
    let start = Instant::now();
    let dim = check_datasets(datasets, &[2, 3])?;
    let levels = datasets.len();
    let tagged: Vec<FidelityDataset> = datasets
        .iter()
        .enumerate()
        .map(|(k, d)| {
            let x = append_columns(&d.inputs, &flag_columns(levels, k));
            FidelityDataset::new(x, d.targets.clone(), d.level)
        })
        .collect::<Result<_>>()?;
    let parts: Vec<(&FidelityDataset, usize)> = tagged.iter().map(|d| (d, 0)).collect();
    let net = MlpModel::fit_parts(cfg, Topology::Plain, &parts, &Objective::mse(cfg.l2_lambda))?;
    Ok(MfModel {
        method: if levels == 3 { MethodId::Flag3f } else { MethodId::Flag },
        components: Components::Flag { net, levels },
        fidelities: levels,
        input_dim: dim,
        wall_time: start.elapsed().as_secs_f64(),
        degenerate: false,
        rho_fallback: false,
    })
}

fn fit_joint(
    method: MethodId,
    topology: Topology,
    cfg: &MlpConfig,
    weights: &MfWeights,
    penalty: f64,
    datasets: &[&FidelityDataset],
) -> Result<MfModel> {
    let start = Instant::now();
    let dim = check_datasets(datasets, &[2, 3])?;
    let head_weights = weights.head_weights()?;
    if head_weights.len() != datasets.len() {
        return Err(Error::precondition(format!(
            "{}-level weights given for {} datasets",
            head_weights.len(),
            datasets.len()
        )));
    }
    let parts: Vec<(&FidelityDataset, usize)> = datasets.iter().enumerate().map(|(k, d)| (*d, k)).collect();
    let net = MlpModel::fit_parts(cfg, topology, &parts, &Objective::weighted(head_weights, penalty))?;
    Ok(MfModel {
        method,
        components: Components::Joint { net },
        fidelities: datasets.len(),
        input_dim: dim,
        wall_time: start.elapsed().as_secs_f64(),
        degenerate: false,
        rho_fallback: false,
    })
}

/// Shared trunk with chained per-fidelity heads: the LF head reads the trunk
/// features, each higher head also reads every lower head's output.
pub fn fit_intermediate(
    cfg: &MlpConfig,
    weights: &MfWeights,
    penalty: f64,
    datasets: &[&FidelityDataset],
) -> Result<MfModel> {
    let method = if datasets.len() == 3 {
        MethodId::Intermediate3f
    } else {
        MethodId::Intermediate
    };
    let topology = Topology::Chained { heads: datasets.len() };
    fit_joint(method, topology, cfg, weights, penalty, datasets)
}

/// Shared latent `u(x)` mapped to every fidelity by one linear layer `W u + b`.
pub fn fit_gpmimic(
    cfg: &MlpConfig,
    weights: &MfWeights,
    penalty: f64,
    datasets: &[&FidelityDataset],
) -> Result<MfModel> {
    let method = if datasets.len() == 3 {
        MethodId::GpMimic3f
    } else {
        MethodId::GpMimic
    };
    let topology = Topology::Mixing { outputs: datasets.len() };
    fit_joint(method, topology, cfg, weights, penalty, datasets)
}
