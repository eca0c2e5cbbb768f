use std::time::Instant;

use super::{check_datasets, Components, MethodId, MfModel};
use crate::dataset::FidelityDataset;
use crate::error::Result;
use crate::gp::{gp_fit, GpConfig, GpModel};

/// Most generalized least-squares refinements of `rho` before the last
/// residual fit is kept.
const RHO_ITERS: usize = 8;

/// Two-stage co-kriging: `y_H(x) = rho * mu_L(x) + delta(x)`.
///
/// `rho` is the least-squares slope of HF targets on the LF mean at the HF
/// inputs, with a free offset that the residual GP absorbs. The first slope is
/// ordinary least squares; each refinement reweights by the covariance of the
/// residual GP fitted at the previous slope, until the slope settles.
pub fn fit_mfgp(
    lf_config: &GpConfig,
    residual_config: &GpConfig,
    lf: &FidelityDataset,
    hf: &FidelityDataset,
) -> Result<MfModel> {
    let start = Instant::now();
    let dim = check_datasets(&[lf, hf], &[2])?;
    let lf_gp = gp_fit(lf_config, lf)?;
    let mu_l = lf_gp.predict_mean(&hf.inputs)?;
    let ones = vec![1.0; mu_l.len()];
    let ols = slope(&mu_l, &hf.targets, &ones, &ones, &mu_l);
    let (mut rho, rho_fallback) = match ols {
        Some(r) => (r, false),
        None => (0.0, true),
    };
    let mut residual = fit_residual(residual_config, hf, &mu_l, rho)?;
    if !rho_fallback {
        let scale = rho.abs().max(1.0);
        for _ in 0..RHO_ITERS {
            let k_one = residual.covariance_solve(&ones)?;
            let k_mu = residual.covariance_solve(&mu_l)?;
            let Some(next) = slope(&mu_l, &hf.targets, &ones, &k_one, &k_mu) else { break };
            let settled = (next - rho).abs() <= 1e-6 * scale;
            rho = next;
            residual = fit_residual(residual_config, hf, &mu_l, rho)?;
            if settled {
                break;
            }
        }
    }
    Ok(MfModel {
        method: MethodId::MfGp,
        components: Components::MfGp {
            lf: lf_gp,
            rho,
            residual,
        },
        fidelities: 2,
        input_dim: dim,
        wall_time: start.elapsed().as_secs_f64(),
        degenerate: false,
        rho_fallback,
    })
}

fn fit_residual(config: &GpConfig, hf: &FidelityDataset, mu_l: &[f64], rho: f64) -> Result<GpModel> {
    let resid: Vec<f64> = hf.targets.iter().zip(mu_l).map(|(y, m)| y - rho * m).collect();
    let data = FidelityDataset::with_columns(hf.inputs.clone(), resid, hf.level, hf.columns.clone())?;
    gp_fit(config, &data)
}

/// Weighted least-squares slope of `y` on `mu` with a free offset, given
/// `w1 = W 1` and `wm = W mu` for a symmetric weight `W`. `None` when `mu` is
/// constant under `W` or the slope is not finite.
fn slope(mu: &[f64], y: &[f64], ones: &[f64], w1: &[f64], wm: &[f64]) -> Option<f64> {
    let dot = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>();
    let (a11, a12, a22) = (dot(ones, w1), dot(ones, wm), dot(mu, wm));
    let (b1, b2) = (dot(w1, y), dot(wm, y));
    let det = a11 * a22 - a12 * a12;
    if !(a11 > 0.0) || !(det > 1e-12 * a11 * a22.abs()) {
        return None;
    }
    let rho = (a11 * b2 - a12 * b1) / det;
    rho.is_finite().then_some(rho)
}
