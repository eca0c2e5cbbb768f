//! Feed-forward regressors trained by full-batch Adam on a weighted MSE + L2 objective.
//!
//! Inputs and targets are standardized with training statistics before the
//! network sees them; every loss and gradient in this module lives on that
//! standardized scale. Predictions are mapped back to target units.

mod layers;
mod network;

pub use layers::{Activation, Dense, Stack};
pub use network::{ForwardCache, Network, Topology};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::dataset::{FidelityDataset, Standardizer};
use crate::error::{Error, Result};
use crate::matrix::Matrix;

const ADAM_BETA1: f64 = 0.9;
const ADAM_BETA2: f64 = 0.999;
const ADAM_EPS: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq)]
pub struct MlpConfig {
    /// Hidden layer widths; empty means a purely affine model.
    pub layer_widths: Vec<usize>,
    pub learning_rate: f64,
    pub epochs: usize,
    /// L2 penalty on every trainable parameter.
    pub l2_lambda: f64,
    pub seed: u64,
    pub activation: Activation,
}

impl Default for MlpConfig {
    fn default() -> Self {
        MlpConfig {
            layer_widths: vec![32, 32],
            learning_rate: 1e-3,
            epochs: 500,
            l2_lambda: 0.0,
            seed: 0,
            activation: Activation::Tanh,
        }
    }
}

impl MlpConfig {
    /// `layers` hidden layers of equal `width`.
    pub fn uniform(layers: usize, width: usize, learning_rate: f64, epochs: usize) -> MlpConfig {
        MlpConfig {
            layer_widths: vec![width; layers],
            learning_rate,
            epochs,
            ..MlpConfig::default()
        }
    }

    /// Affine map with no hidden layer.
    pub fn linear(learning_rate: f64, epochs: usize) -> MlpConfig {
        MlpConfig {
            layer_widths: Vec::new(),
            learning_rate,
            epochs,
            ..MlpConfig::default()
        }
    }

    pub fn with_seed(mut self, seed: u64) -> MlpConfig {
        self.seed = seed;
        self
    }

    pub fn with_epochs(mut self, epochs: usize) -> MlpConfig {
        self.epochs = epochs;
        self
    }

    pub fn with_l2(mut self, l2: f64) -> MlpConfig {
        self.l2_lambda = l2;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.layer_widths.contains(&0) {
            return Err(Error::Config("hidden widths must be positive".into()));
        }
        if self.epochs == 0 {
            return Err(Error::Config("epochs must be >= 1".into()));
        }
        if !(self.learning_rate > 0.0 && self.learning_rate.is_finite()) {
            return Err(Error::Config(format!(
                "learning rate must be positive, got {}",
                self.learning_rate
            )));
        }
        if !(self.l2_lambda >= 0.0 && self.l2_lambda.is_finite()) {
            return Err(Error::Config(format!(
                "l2 penalty must be nonnegative, got {}",
                self.l2_lambda
            )));
        }
        Ok(())
    }
}

/// `sum_k w_k * MSE_k + l2 * ||params||²`, one weight per network output.
#[derive(Debug, Clone, PartialEq)]
pub struct Objective {
    pub head_weights: Vec<f64>,
    pub l2: f64,
}

impl Objective {
    pub fn mse(l2: f64) -> Objective {
        Objective {
            head_weights: vec![1.0],
            l2,
        }
    }

    pub fn weighted(head_weights: Vec<f64>, l2: f64) -> Objective {
        Objective { head_weights, l2 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LossBreakdown {
    pub total: f64,
    /// MSE per output over the rows assigned to it; `None` when it has no rows.
    pub head_mse: Vec<Option<f64>>,
    pub param_norm_sq: f64,
    pub penalty: f64,
}

/// Rows assigned to network outputs, on the standardized scale.
struct Prepared {
    x: Matrix,
    y: Vec<f64>,
    head: Vec<usize>,
    counts: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct MlpModel {
    pub config: MlpConfig,
    network: Network,
    x_scale: Standardizer,
    y_scale: Standardizer,
    loss_trace: Vec<f64>,
}

impl MlpModel {
    /// Initialized but untrained model whose scalers are fit on `parts`.
    pub fn initialize(
        config: &MlpConfig,
        topology: Topology,
        parts: &[(&FidelityDataset, usize)],
    ) -> Result<MlpModel> {
        config.validate()?;
        let first = parts
            .first()
            .ok_or_else(|| Error::precondition("no training data"))?;
        let dim = first.0.dim();
        for (d, head) in parts {
            if d.dim() != dim {
                return Err(Error::shape(format!("{dim} input columns"), d.dim()));
            }
            if *head >= topology.outputs() {
                return Err(Error::precondition(format!(
                    "output index {head} out of range for {} outputs",
                    topology.outputs()
                )));
            }
        }
        let pooled_x = Matrix::vstack(&parts.iter().map(|(d, _)| &d.inputs).collect::<Vec<_>>())?;
        let pooled_y: Vec<f64> = parts.iter().flat_map(|(d, _)| d.targets.iter().copied()).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        let network = Network::build(topology, dim, &config.layer_widths, config.activation, &mut rng);
        Ok(MlpModel {
            config: config.clone(),
            network,
            x_scale: Standardizer::fit(&pooled_x),
            y_scale: Standardizer::fit_vec(&pooled_y),
            loss_trace: Vec::new(),
        })
    }

    /// Trains a model with the given topology. `parts` maps each dataset to the
    /// network output whose loss term its rows enter.
    pub fn fit_parts(
        config: &MlpConfig,
        topology: Topology,
        parts: &[(&FidelityDataset, usize)],
        objective: &Objective,
    ) -> Result<MlpModel> {
        Self::initialize(config, topology, parts)?.fit_initialized(parts, objective)
    }

    fn fit_initialized(mut self, parts: &[(&FidelityDataset, usize)], objective: &Objective) -> Result<MlpModel> {
        let prepared = self.prepare(parts)?;
        self.check_objective(&prepared, objective)?;
        if prepared.y.is_empty() {
            return Err(Error::precondition("no training rows"));
        }
        self.train(&prepared, objective)?;
        Ok(self)
    }

    pub fn input_dim(&self) -> usize {
        self.x_scale.dim()
    }

    pub fn outputs(&self) -> usize {
        self.network.outputs()
    }

    pub fn network(&self) -> &Network {
        &self.network
    }

    pub fn loss_trace(&self) -> &[f64] {
        &self.loss_trace
    }

    pub fn params(&self) -> Vec<f64> {
        self.network.params()
    }

    pub fn set_params(&mut self, p: &[f64]) -> Result<()> {
        if p.len() != self.network.param_count() {
            return Err(Error::shape(
                format!("{} parameters", self.network.param_count()),
                p.len(),
            ));
        }
        self.network.set_params(p);
        Ok(())
    }

    pub fn param_norm_sq(&self) -> f64 {
        self.params().iter().map(|v| v * v).sum()
    }

    pub fn input_scaler(&self) -> &Standardizer {
        &self.x_scale
    }

    pub fn target_scaler(&self) -> &Standardizer {
        &self.y_scale
    }

    /// Every network output, in target units, one column per output.
    pub fn predict_outputs(&self, inputs: &Matrix) -> Result<Matrix> {
        if inputs.cols() != self.input_dim() {
            return Err(Error::shape(format!("{} input columns", self.input_dim()), inputs.cols()));
        }
        if inputs.is_empty() {
            return Ok(Matrix::zeros(0, self.outputs()));
        }
        let mut out = self.network.forward(&self.x_scale.transform(inputs)?);
        for v in out.as_mut_slice() {
            *v = self.y_scale.inverse(*v);
        }
        Ok(out)
    }

    /// Prediction of the last output (the highest fidelity for multi-output models).
    pub fn predict(&self, inputs: &Matrix) -> Result<Vec<f64>> {
        self.predict_output(inputs, self.outputs() - 1)
    }

    pub fn predict_output(&self, inputs: &Matrix, k: usize) -> Result<Vec<f64>> {
        Ok(self.predict_outputs(inputs)?.col_values(k))
    }

    pub fn loss_breakdown(
        &self,
        parts: &[(&FidelityDataset, usize)],
        objective: &Objective,
    ) -> Result<LossBreakdown> {
        let p = self.prepare(parts)?;
        self.check_objective(&p, objective)?;
        Ok(self.evaluate(&p, objective, false).0)
    }

    pub fn loss_gradient(
        &self,
        parts: &[(&FidelityDataset, usize)],
        objective: &Objective,
    ) -> Result<Vec<f64>> {
        let p = self.prepare(parts)?;
        self.check_objective(&p, objective)?;
        Ok(self.evaluate(&p, objective, true).1.unwrap())
    }

    fn prepare(&self, parts: &[(&FidelityDataset, usize)]) -> Result<Prepared> {
        let outputs = self.outputs();
        let mut xs = Vec::with_capacity(parts.len());
        let mut y = Vec::new();
        let mut head = Vec::new();
        let mut counts = vec![0; outputs];
        for (d, k) in parts {
            if d.dim() != self.input_dim() {
                return Err(Error::shape(format!("{} input columns", self.input_dim()), d.dim()));
            }
            if *k >= outputs {
                return Err(Error::precondition(format!("output index {k} out of range")));
            }
            xs.push(self.x_scale.transform(&d.inputs)?);
            y.extend(d.targets.iter().map(|&t| self.y_scale.forward(t)));
            head.extend(std::iter::repeat(*k).take(d.len()));
            counts[*k] += d.len();
        }
        let x = Matrix::vstack(&xs.iter().collect::<Vec<_>>())?;
        Ok(Prepared { x, y, head, counts })
    }

    fn check_objective(&self, p: &Prepared, objective: &Objective) -> Result<()> {
        if objective.head_weights.len() != self.outputs() {
            return Err(Error::shape(
                format!("{} loss weights", self.outputs()),
                objective.head_weights.len(),
            ));
        }
        if objective.head_weights.iter().any(|w| !(*w >= 0.0 && w.is_finite())) {
            return Err(Error::precondition("loss weights must be nonnegative"));
        }
        if !(objective.l2 >= 0.0 && objective.l2.is_finite()) {
            return Err(Error::precondition("l2 penalty must be nonnegative"));
        }
        for (k, (&w, &n)) in objective.head_weights.iter().zip(&p.counts).enumerate() {
            if w > 0.0 && n == 0 {
                return Err(Error::precondition(format!(
                    "output {k} carries loss weight {w} but has no rows"
                )));
            }
        }
        Ok(())
    }

    fn evaluate(&self, p: &Prepared, obj: &Objective, with_grad: bool) -> (LossBreakdown, Option<Vec<f64>>) {
        let outputs = self.outputs();
        let cache = self.network.forward_cached(&p.x);
        let mut sse = vec![0.0; outputs];
        let mut d_out = Matrix::zeros(p.y.len(), outputs);
        for (i, (&y, &k)) in p.y.iter().zip(&p.head).enumerate() {
            let r = cache.output.get(i, k) - y;
            sse[k] += r * r;
            if with_grad && obj.head_weights[k] > 0.0 {
                d_out.set(i, k, obj.head_weights[k] * 2.0 * r / p.counts[k] as f64);
            }
        }
        let head_mse: Vec<Option<f64>> = sse
            .iter()
            .zip(&p.counts)
            .map(|(&s, &n)| (n > 0).then(|| s / n as f64))
            .collect();
        let params = self.network.params();
        let param_norm_sq: f64 = params.iter().map(|v| v * v).sum();
        let penalty = obj.l2 * param_norm_sq;
        let data_term: f64 = head_mse
            .iter()
            .zip(&obj.head_weights)
            .filter(|(_, &w)| w > 0.0)
            .map(|(m, &w)| w * m.unwrap_or(0.0))
            .sum();
        let breakdown = LossBreakdown {
            total: data_term + penalty,
            head_mse,
            param_norm_sq,
            penalty,
        };
        let grad = with_grad.then(|| {
            let mut g = self.network.backward(&cache, &d_out);
            if obj.l2 > 0.0 {
                for (gi, pi) in g.iter_mut().zip(&params) {
                    *gi += 2.0 * obj.l2 * pi;
                }
            }
            g
        });
        (breakdown, grad)
    }

    fn train(&mut self, p: &Prepared, obj: &Objective) -> Result<()> {
        let n_params = self.network.param_count();
        let mut m = vec![0.0; n_params];
        let mut v = vec![0.0; n_params];
        let mut params = self.network.params();
        let lr = self.config.learning_rate;
        self.loss_trace = Vec::with_capacity(self.config.epochs);
        for epoch in 0..self.config.epochs {
            let (loss, grad) = self.evaluate(p, obj, true);
            let grad = grad.unwrap();
            if !loss.total.is_finite() || grad.iter().any(|g| !g.is_finite()) {
                return Err(Error::Divergence {
                    epoch: epoch + 1,
                    loss: loss.total,
                });
            }
            self.loss_trace.push(loss.total);
            let t = (epoch + 1) as i32;
            let bc1 = 1.0 - ADAM_BETA1.powi(t);
            let bc2 = 1.0 - ADAM_BETA2.powi(t);
            for i in 0..n_params {
                m[i] = ADAM_BETA1 * m[i] + (1.0 - ADAM_BETA1) * grad[i];
                v[i] = ADAM_BETA2 * v[i] + (1.0 - ADAM_BETA2) * grad[i] * grad[i];
                params[i] -= lr * (m[i] / bc1) / ((v[i] / bc2).sqrt() + ADAM_EPS);
            }
            self.network.set_params(&params);
        }
        Ok(())
    }
}

/// Fits a single-output network on one dataset.
pub fn mlp_fit(config: &MlpConfig, data: &FidelityDataset, objective: &Objective) -> Result<MlpModel> {
    if data.len() < 2 {
        return Err(Error::precondition(format!(
            "need at least 2 training rows, got {}",
            data.len()
        )));
    }
    MlpModel::fit_parts(config, Topology::Plain, &[(data, 0)], objective)
}

/// Same as [`mlp_fit`] but accepts a single row and puts a lower bound on the
/// input scale of the listed columns. Those columns carry another model's
/// prediction; a prediction that is constant up to fitting noise keeps that
/// noise small instead of having it stretched to unit spread.
pub(crate) fn mlp_fit_floored(
    config: &MlpConfig,
    data: &FidelityDataset,
    objective: &Objective,
    floors: &[(usize, f64)],
) -> Result<MlpModel> {
    let parts = [(data, 0)];
    let mut model = MlpModel::initialize(config, Topology::Plain, &parts)?;
    for &(col, floor) in floors {
        if let Some(s) = model.x_scale.scale.get_mut(col) {
            *s = s.max(floor);
        }
    }
    model.fit_initialized(&parts, objective)
}

pub fn mlp_predict(model: &MlpModel, inputs: &Matrix) -> Result<Vec<f64>> {
    model.predict(inputs)
}

/// Analytic gradient of the objective w.r.t. the flat parameter vector.
pub fn mlp_loss_gradient(model: &MlpModel, data: &FidelityDataset, objective: &Objective) -> Result<Vec<f64>> {
    model.loss_gradient(&[(data, 0)], objective)
}

pub fn mlp_loss(model: &MlpModel, data: &FidelityDataset, objective: &Objective) -> Result<f64> {
    Ok(model.loss_breakdown(&[(data, 0)], objective)?.total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::FidelityLevel;
    use rand::Rng;

    fn line_data(n: usize, f: impl Fn(f64) -> f64) -> FidelityDataset {
        let xs: Vec<f64> = (0..n).map(|i| i as f64 / (n - 1).max(1) as f64).collect();
        let ys = xs.iter().map(|&x| f(x)).collect();
        FidelityDataset::new(Matrix::column(&xs), ys, FidelityLevel::Hf).unwrap()
    }

    /// Central differences on the objective, the independent check for backprop.
    fn finite_difference(model: &MlpModel, parts: &[(&FidelityDataset, usize)], obj: &Objective, idx: usize) -> f64 {
        let h = 1e-5;
        let base = model.params();
        let mut m = model.clone();
        let mut p = base.clone();
        p[idx] = base[idx] + h;
        m.set_params(&p).unwrap();
        let up = m.loss_breakdown(parts, obj).unwrap().total;
        p[idx] = base[idx] - h;
        m.set_params(&p).unwrap();
        let down = m.loss_breakdown(parts, obj).unwrap().total;
        (up - down) / (2.0 * h)
    }

    fn rel_err(a: f64, b: f64) -> f64 {
        (a - b).abs() / a.abs().max(b.abs()).max(1e-6)
    }

    #[test]
    fn constant_target_is_learned() {
        let d = line_data(20, |_| 3.0);
        let cfg = MlpConfig::uniform(2, 16, 1e-2, 500);
        let m = mlp_fit(&cfg, &d, &Objective::mse(0.0)).unwrap();
        for p in m.predict(&d.inputs).unwrap() {
            assert!((p - 3.0).abs() < 1e-2, "{p}");
        }
        assert_eq!(m.loss_trace().len(), 500);
    }

    #[test]
    fn identity_target_reaches_low_rmse() {
        let d = line_data(200, |x| x);
        let cfg = MlpConfig::uniform(2, 32, 1e-3, 2000);
        let m = mlp_fit(&cfg, &d, &Objective::mse(0.0)).unwrap();
        let pred = m.predict(&d.inputs).unwrap();
        let rmse = (pred.iter().zip(&d.targets).map(|(p, t)| (p - t).powi(2)).sum::<f64>() / 200.0).sqrt();
        assert!(rmse < 0.01, "rmse {rmse}");
        // loss never rises across a 50-epoch window on this noiseless target
        let tr = m.loss_trace();
        for t in 0..tr.len() - 50 {
            assert!(tr[t + 50] <= tr[t], "epoch {t}: {} -> {}", tr[t], tr[t + 50]);
        }
    }

    #[test]
    fn penalty_shrinks_weights() {
        let d = line_data(30, |x| (3.0 * x).sin());
        let cfg = MlpConfig::uniform(2, 16, 1e-2, 300);
        let free = mlp_fit(&cfg, &d, &Objective::mse(0.0)).unwrap();
        let tight = mlp_fit(&cfg, &d, &Objective::mse(1e3)).unwrap();
        assert!(tight.param_norm_sq() < free.param_norm_sq());
    }

    #[test]
    fn fit_is_deterministic() {
        let d = line_data(25, |x| x * x);
        let cfg = MlpConfig::uniform(2, 8, 1e-2, 100).with_seed(9);
        let a = mlp_fit(&cfg, &d, &Objective::mse(1e-4)).unwrap();
        let b = mlp_fit(&cfg, &d, &Objective::mse(1e-4)).unwrap();
        let pa: Vec<u64> = a.params().iter().map(|v| v.to_bits()).collect();
        let pb: Vec<u64> = b.params().iter().map(|v| v.to_bits()).collect();
        assert_eq!(pa, pb);
    }

    #[test]
    fn preconditions() {
        let one = line_data(1, |x| x);
        assert!(matches!(mlp_fit(&MlpConfig::default(), &one, &Objective::mse(0.0)), Err(Error::Precondition(_))));
        let d = line_data(5, |x| x);
        let bad = MlpConfig { epochs: 0, ..MlpConfig::default() };
        assert!(matches!(mlp_fit(&bad, &d, &Objective::mse(0.0)), Err(Error::Config(_))));
        let wide = FidelityDataset::new(Matrix::zeros(3, 2), vec![0.0; 3], FidelityLevel::Hf).unwrap();
        let m = mlp_fit(&MlpConfig::uniform(1, 4, 1e-3, 5), &d, &Objective::mse(0.0)).unwrap();
        assert!(matches!(m.predict(&wide.inputs), Err(Error::Shape { .. })));
    }

    #[test]
    fn divergence_names_epoch() {
        let d = line_data(10, |x| 1e3 * x);
        let cfg = MlpConfig::uniform(1, 4, 1e300, 50);
        match mlp_fit(&cfg, &d, &Objective::mse(0.0)) {
            Err(Error::Divergence { epoch, .. }) => assert!(epoch >= 1),
            other => panic!("expected divergence, got {other:?}"),
        }
    }

    #[test]
    fn predict_edge_cases() {
        let d = line_data(10, |x| x);
        let m = mlp_fit(&MlpConfig::uniform(1, 4, 1e-2, 20), &d, &Objective::mse(0.0)).unwrap();
        assert!(m.predict(&Matrix::zeros(0, 1)).unwrap().is_empty());
        let p = m.predict(&Matrix::column(&[0.3, 0.3])).unwrap();
        assert_eq!(p[0].to_bits(), p[1].to_bits());
    }

    #[test]
    fn zero_network_zero_target_has_zero_gradient() {
        let d = line_data(6, |_| 0.0);
        let cfg = MlpConfig::uniform(2, 5, 1e-3, 1);
        let mut m = MlpModel::initialize(&cfg, Topology::Plain, &[(&d, 0)]).unwrap();
        let n = m.params().len();
        m.set_params(&vec![0.0; n]).unwrap();
        let g = mlp_loss_gradient(&m, &d, &Objective::mse(0.0)).unwrap();
        assert!(g.iter().all(|&v| v == 0.0));
    }

    #[test]
    fn penalty_gradient_is_linear_in_lambda() {
        let d = line_data(6, |x| x.sin());
        let cfg = MlpConfig::uniform(2, 5, 1e-3, 1).with_seed(4);
        let m = MlpModel::initialize(&cfg, Topology::Plain, &[(&d, 0)]).unwrap();
        let g0 = mlp_loss_gradient(&m, &d, &Objective::mse(0.0)).unwrap();
        let g1 = mlp_loss_gradient(&m, &d, &Objective::mse(0.3)).unwrap();
        let g2 = mlp_loss_gradient(&m, &d, &Objective::mse(0.6)).unwrap();
        for i in 0..g0.len() {
            let p1 = g1[i] - g0[i];
            let p2 = g2[i] - g0[i];
            assert!((p2 - 2.0 * p1).abs() < 1e-12, "{i}: {p1} {p2}");
        }
    }

    #[test]
    fn plain_gradient_matches_finite_differences() {
        let d = line_data(12, |x| (4.0 * x).cos());
        let cfg = MlpConfig::uniform(3, 7, 1e-3, 1).with_seed(2);
        let m = MlpModel::initialize(&cfg, Topology::Plain, &[(&d, 0)]).unwrap();
        let obj = Objective::mse(1e-3);
        let g = mlp_loss_gradient(&m, &d, &obj).unwrap();
        for i in 0..g.len() {
            let fd = finite_difference(&m, &[(&d, 0)], &obj, i);
            assert!(rel_err(g[i], fd) < 1e-4, "param {i}: {} vs {fd}", g[i]);
        }
    }

    fn two_level_data() -> (FidelityDataset, FidelityDataset, FidelityDataset) {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mk = |n: usize, rng: &mut ChaCha8Rng, lvl, f: &dyn Fn(f64, f64) -> f64| {
            let rows: Vec<[f64; 2]> = (0..n).map(|_| [rng.gen::<f64>(), rng.gen::<f64>()]).collect();
            let y = rows.iter().map(|r| f(r[0], r[1])).collect();
            FidelityDataset::new(Matrix::from_rows(&rows, 2).unwrap(), y, lvl).unwrap()
        };
        let lf = mk(9, &mut rng, crate::FidelityLevel::Lf, &|a, b| a + b);
        let mf = mk(6, &mut rng, crate::FidelityLevel::Mf, &|a, b| a * b + 1.0);
        let hf = mk(4, &mut rng, crate::FidelityLevel::Hf, &|a, b| (a - b).sin());
        (lf, mf, hf)
    }

    #[test]
    fn multi_head_gradients_match_finite_differences() {
        let (lf, mf, hf) = two_level_data();
        let parts = [(&lf, 0), (&mf, 1), (&hf, 2)];
        let obj = Objective::weighted(vec![0.2, 0.3, 0.5], 1e-3);
        for topo in [Topology::Chained { heads: 3 }, Topology::Mixing { outputs: 3 }] {
            let cfg = MlpConfig::uniform(2, 5, 1e-3, 1).with_seed(8);
            let m = MlpModel::initialize(&cfg, topo, &parts).unwrap();
            let g = m.loss_gradient(&parts, &obj).unwrap();
            for i in 0..g.len() {
                let fd = finite_difference(&m, &parts, &obj, i);
                assert!(rel_err(g[i], fd) < 1e-4, "{topo:?} param {i}: {} vs {fd}", g[i]);
            }
        }
    }

    #[test]
    fn weighted_loss_requires_rows_for_weighted_heads() {
        let (lf, _, hf) = two_level_data();
        let cfg = MlpConfig::uniform(1, 4, 1e-3, 3);
        let err = MlpModel::fit_parts(&cfg, Topology::Chained { heads: 3 }, &[(&lf, 0), (&hf, 2)], &Objective::weighted(vec![0.3, 0.3, 0.4], 0.0));
        assert!(matches!(err, Err(Error::Precondition(_))));
        let ok = MlpModel::fit_parts(&cfg, Topology::Chained { heads: 3 }, &[(&lf, 0), (&hf, 2)], &Objective::weighted(vec![0.5, 0.0, 0.5], 0.0));
        assert!(ok.is_ok());
    }
}
