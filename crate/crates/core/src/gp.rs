//! Gaussian-process regression with ARD Matérn-5/2 or squared-exponential
//! kernels plus additive white noise.
//!
//! Inputs and targets are standardized with training statistics; all
//! hyperparameters live on that standardized scale. Hyperparameters are
//! chosen by maximizing the log marginal likelihood with multi-start L-BFGS.

use faer::dyn_stack::{GlobalPodBuffer, PodStack};
use faer::linalg::cholesky::llt;
use faer::{Conj, Mat, Parallelism};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dataset::{FidelityDataset, Standardizer};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::optim::{self, LbfgsOptions};

// single-threaded kernels keep fits bitwise reproducible under any thread pool
const PAR: Parallelism = Parallelism::None;

const JITTER_START: f64 = 1e-10;
const JITTER_MAX: f64 = 1e-4;

const LENGTH_BOUNDS: (f64, f64) = (1e-2, 1e3);
const SIGNAL_BOUNDS: (f64, f64) = (1e-4, 1e4);
const NOISE_BOUNDS: (f64, f64) = (1e-10, 1.0);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KernelKind {
    Matern52,
    Rbf,
}

impl KernelKind {
    pub fn as_str(self) -> &'static str {
        match self {
            KernelKind::Matern52 => "matern52+white",
            KernelKind::Rbf => "rbf+white",
        }
    }

    /// Correlation at scaled distance `r` and its derivative factor:
    /// returns `(k(r), g(r))` with `dk/dlog l_j = sigma2 * g(r) * (dx_j/l_j)^2`.
    #[inline]
    fn eval(self, r2: f64) -> (f64, f64) {
        match self {
            KernelKind::Matern52 => {
                let s5r = (5.0 * r2).sqrt();
                let e = (-s5r).exp();
                ((1.0 + s5r + 5.0 * r2 / 3.0) * e, 5.0 / 3.0 * (1.0 + s5r) * e)
            }
            KernelKind::Rbf => {
                let k = (-0.5 * r2).exp();
                (k, k)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GpConfig {
    pub kernel: KernelKind,
    /// Number of optimizer starts; the first is the fixed default point.
    pub restarts: usize,
    pub max_iter: usize,
    pub seed: u64,
}

impl GpConfig {
    pub fn new(kernel: KernelKind) -> GpConfig {
        GpConfig {
            kernel,
            restarts: 3,
            max_iter: 150,
            seed: 0,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> GpConfig {
        self.seed = seed;
        self
    }

    pub fn with_restarts(mut self, restarts: usize) -> GpConfig {
        self.restarts = restarts;
        self
    }
}

/// Kernel hyperparameters on the standardized scale.
#[derive(Debug, Clone, PartialEq)]
pub struct GpHyper {
    pub length_scales: Vec<f64>,
    pub signal_variance: f64,
    pub noise_variance: f64,
}

#[derive(Debug, Clone)]
pub struct GpModel {
    kernel: KernelKind,
    hyper: GpHyper,
    x_scale: Standardizer,
    y_scale: Standardizer,
    x: Matrix,
    /// Lower Cholesky factor of the training covariance; the strict upper
    /// triangle is unused. Kept on faer's column-major layout.
    chol: Mat<f64>,
    alpha: Vec<f64>,
    jitter: f64,
    nll: f64,
}

fn sigmoid(u: f64) -> f64 {
    1.0 / (1.0 + (-u).exp())
}

fn logit(p: f64) -> f64 {
    (p / (1.0 - p)).ln()
}

/// Maps an unconstrained coordinate into `[ln lo, ln hi]`; returns the log
/// value and its derivative with respect to `u`.
fn to_log(u: f64, (lo, hi): (f64, f64)) -> (f64, f64) {
    let s = sigmoid(u);
    let (a, b) = (lo.ln(), hi.ln());
    (a + (b - a) * s, (b - a) * s * (1.0 - s))
}

fn from_log(v: f64, (lo, hi): (f64, f64)) -> f64 {
    let (a, b) = (lo.ln(), hi.ln());
    let p = ((v - a) / (b - a)).clamp(1e-9, 1.0 - 1e-9);
    logit(p)
}

fn bounds_for(i: usize, d: usize) -> (f64, f64) {
    if i < d {
        LENGTH_BOUNDS
    } else if i == d {
        SIGNAL_BOUNDS
    } else {
        NOISE_BOUNDS
    }
}

fn decode(u: &[f64]) -> (GpHyper, Vec<f64>) {
    let d = u.len() - 2;
    let mut logs = Vec::with_capacity(u.len());
    let mut dlog = Vec::with_capacity(u.len());
    for (i, &ui) in u.iter().enumerate() {
        let (v, g) = to_log(ui, bounds_for(i, d));
        logs.push(v);
        dlog.push(g);
    }
    let hyper = GpHyper {
        length_scales: logs[..d].iter().map(|v| v.exp()).collect(),
        signal_variance: logs[d].exp(),
        noise_variance: logs[d + 1].exp(),
    };
    (hyper, dlog)
}

fn encode(h: &GpHyper) -> Vec<f64> {
    let d = h.length_scales.len();
    let mut u: Vec<f64> = h
        .length_scales
        .iter()
        .map(|l| from_log(l.ln(), LENGTH_BOUNDS))
        .collect();
    u.push(from_log(h.signal_variance.ln(), SIGNAL_BOUNDS));
    u.push(from_log(h.noise_variance.ln(), NOISE_BOUNDS));
    debug_assert_eq!(u.len(), d + 2);
    u
}

fn scaled_sq_dist(a: &[f64], b: &[f64], ls: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .zip(ls)
        .map(|((x, y), l)| {
            let t = (x - y) / l;
            t * t
        })
        .sum()
}

/// Signal covariance, lower triangle only.
fn signal_matrix(kernel: KernelKind, x: &Matrix, h: &GpHyper) -> Mat<f64> {
    let n = x.rows();
    let mut k = Mat::zeros(n, n);
    for j in 0..n {
        k[(j, j)] = h.signal_variance;
        let xj = x.row(j);
        for i in j + 1..n {
            let r2 = scaled_sq_dist(x.row(i), xj, &h.length_scales);
            k[(i, j)] = h.signal_variance * kernel.eval(r2).0;
        }
    }
    k
}

fn cholesky(mut a: Mat<f64>) -> Option<Mat<f64>> {
    let params = Default::default();
    let req = llt::compute::cholesky_in_place_req::<f64>(a.nrows(), PAR, params).ok()?;
    let mut buf = GlobalPodBuffer::new(req);
    llt::compute::cholesky_in_place(a.as_mut(), Default::default(), PAR, PodStack::new(&mut buf), params).ok()?;
    Some(a)
}

/// Solves `L Lᵀ x = y`.
fn chol_solve(l: &Mat<f64>, y: &[f64]) -> Vec<f64> {
    let n = y.len();
    let mut rhs = Mat::from_fn(n, 1, |i, _| y[i]);
    let req = llt::solve::solve_in_place_req::<f64>(n, 1, PAR).expect("solve workspace");
    let mut buf = GlobalPodBuffer::new(req);
    llt::solve::solve_in_place_with_conj(l.as_ref(), Conj::No, rhs.as_mut(), PAR, PodStack::new(&mut buf));
    (0..n).map(|i| rhs[(i, 0)]).collect()
}

/// `(L Lᵀ)⁻¹`, lower triangle only.
fn chol_inverse(l: &Mat<f64>) -> Mat<f64> {
    let n = l.nrows();
    let mut inv = Mat::zeros(n, n);
    let req = llt::inverse::invert_lower_req::<f64>(n, PAR).expect("inverse workspace");
    let mut buf = GlobalPodBuffer::new(req);
    llt::inverse::invert_lower(inv.as_mut(), l.as_ref(), PAR, PodStack::new(&mut buf));
    inv
}

/// Factorizes `K_signal + (noise + jitter) I`, escalating jitter on failure.
fn factorize(k_signal: &Mat<f64>, noise: f64) -> Result<(Mat<f64>, f64)> {
    let n = k_signal.nrows();
    let mut jitter = JITTER_START;
    loop {
        let mut k = k_signal.clone();
        for i in 0..n {
            k[(i, i)] += noise + jitter;
        }
        if let Some(l) = cholesky(k) {
            return Ok((l, jitter));
        }
        if jitter >= JITTER_MAX {
            return Err(Error::Conditioning { jitter });
        }
        jitter *= 10.0;
    }
}

fn nll_value(l: &Mat<f64>, y: &[f64]) -> (f64, Vec<f64>) {
    let alpha = chol_solve(l, y);
    let n = y.len();
    let logdet: f64 = (0..n).map(|i| l[(i, i)].ln()).sum();
    let fit: f64 = y.iter().zip(&alpha).map(|(a, b)| a * b).sum();
    let v = 0.5 * fit + logdet + 0.5 * n as f64 * (2.0 * std::f64::consts::PI).ln();
    (v, alpha)
}

/// Negative log marginal likelihood and, when `grad` is set, its gradient in
/// the unconstrained coordinates. Infeasible points return `+inf`.
fn objective(kernel: KernelKind, x: &Matrix, y: &[f64], u: &[f64], grad: bool) -> (f64, Vec<f64>) {
    let d = x.cols();
    let n = x.rows();
    let (h, dlog) = decode(u);
    let ks = signal_matrix(kernel, x, &h);
    let Ok((l, _)) = factorize(&ks, h.noise_variance) else {
        return (f64::INFINITY, vec![0.0; u.len()]);
    };
    let (value, alpha) = nll_value(&l, y);
    if !value.is_finite() {
        return (f64::INFINITY, vec![0.0; u.len()]);
    }
    if !grad {
        return (value, Vec::new());
    }
    // W = K^-1 - alpha alpha^T, lower triangle
    let mut w = chol_inverse(&l);
    for j in 0..n {
        for i in j..n {
            w[(i, j)] -= alpha[i] * alpha[j];
        }
    }

    // gradient in log-parameter space, then chained through the sigmoid map
    let mut g = vec![0.0; d + 2];
    for j in 0..n {
        let xj = x.row(j);
        for i in j + 1..n {
            let wij = w[(i, j)];
            let xi = x.row(i);
            let r2 = scaled_sq_dist(xi, xj, &h.length_scales);
            let factor = h.signal_variance * kernel.eval(r2).1;
            // off-diagonal pairs appear twice in the trace; 0.5 * 2 = 1
            for (k, gk) in g[..d].iter_mut().enumerate() {
                let t = (xi[k] - xj[k]) / h.length_scales[k];
                *gk += wij * factor * t * t;
            }
            g[d] += wij * ks[(i, j)];
        }
        g[d] += 0.5 * w[(j, j)] * ks[(j, j)];
        g[d + 1] += 0.5 * w[(j, j)] * h.noise_variance;
    }
    for (gi, di) in g.iter_mut().zip(&dlog) {
        *gi *= di;
    }
    (value, g)
}

fn random_start<R: Rng>(d: usize, rng: &mut R) -> GpHyper {
    let log_uniform = |rng: &mut R, lo: f64, hi: f64| rng.gen_range(lo.ln()..hi.ln()).exp();
    GpHyper {
        length_scales: (0..d).map(|_| log_uniform(rng, 0.1, 10.0)).collect(),
        signal_variance: log_uniform(rng, 0.1, 10.0),
        noise_variance: log_uniform(rng, 1e-6, 1e-1),
    }
}

fn default_start(d: usize) -> GpHyper {
    GpHyper {
        length_scales: vec![1.0; d],
        signal_variance: 1.0,
        noise_variance: 1e-2,
    }
}

impl GpModel {
    /// Conditions a GP on `data` with fixed standardized-scale hyperparameters.
    pub fn with_hyper(kernel: KernelKind, hyper: GpHyper, data: &FidelityDataset) -> Result<GpModel> {
        if data.is_empty() {
            return Err(Error::precondition("GP needs at least one training row"));
        }
        if hyper.length_scales.len() != data.dim() {
            return Err(Error::shape(
                format!("{} length scales", data.dim()),
                hyper.length_scales.len(),
            ));
        }
        let positive = hyper.length_scales.iter().all(|&l| l > 0.0 && l.is_finite())
            && hyper.signal_variance > 0.0
            && hyper.noise_variance >= 0.0;
        if !positive {
            return Err(Error::precondition("GP hyperparameters must be positive"));
        }
        let x_scale = Standardizer::fit(&data.inputs);
        let y_scale = Standardizer::fit_vec(&data.targets);
        let x = x_scale.transform(&data.inputs)?;
        let y = y_scale.forward_vec(&data.targets);
        Self::condition(kernel, hyper, x_scale, y_scale, x, &y)
    }

    fn condition(
        kernel: KernelKind,
        hyper: GpHyper,
        x_scale: Standardizer,
        y_scale: Standardizer,
        x: Matrix,
        y: &[f64],
    ) -> Result<GpModel> {
        let ks = signal_matrix(kernel, &x, &hyper);
        let (chol, jitter) = factorize(&ks, hyper.noise_variance)?;
        let (nll, alpha) = nll_value(&chol, y);
        Ok(GpModel {
            kernel,
            hyper,
            x_scale,
            y_scale,
            x,
            chol,
            alpha,
            jitter,
            nll,
        })
    }

    pub fn kernel(&self) -> KernelKind {
        self.kernel
    }

    pub fn hyper(&self) -> &GpHyper {
        &self.hyper
    }

    pub fn input_dim(&self) -> usize {
        self.x.cols()
    }

    pub fn jitter(&self) -> f64 {
        self.jitter
    }

    /// Negative log marginal likelihood of the standardized targets.
    pub fn neg_log_likelihood(&self) -> f64 {
        self.nll
    }

    /// Fitted noise variance in target units.
    pub fn noise_variance(&self) -> f64 {
        self.hyper.noise_variance * self.y_scale.scale[0].powi(2)
    }

    /// Fitted signal variance in target units.
    pub fn signal_variance(&self) -> f64 {
        self.hyper.signal_variance * self.y_scale.scale[0].powi(2)
    }

    fn check_query(&self, inputs: &Matrix) -> Result<Matrix> {
        if inputs.cols() != self.input_dim() {
            return Err(Error::shape(
                format!("{} input columns", self.input_dim()),
                inputs.cols(),
            ));
        }
        self.x_scale.transform(inputs)
    }

    /// Cross-covariance column `k(x_i, q)` over the training rows.
    fn cross_cov(&self, q: &[f64]) -> Vec<f64> {
        self.x
            .iter_rows()
            .map(|xi| {
                let r2 = scaled_sq_dist(q, xi, &self.hyper.length_scales);
                self.hyper.signal_variance * self.kernel.eval(r2).0
            })
            .collect()
    }

    /// `K^-1 v` for the training covariance (noise and jitter included), up to
    /// the standardized-scale factor on `K`.
    pub fn covariance_solve(&self, v: &[f64]) -> Result<Vec<f64>> {
        if v.len() != self.alpha.len() {
            return Err(Error::shape(format!("{} values", self.alpha.len()), format!("{} values", v.len())));
        }
        Ok(chol_solve(&self.chol, v))
    }

    /// Posterior mean in target units.
    pub fn predict_mean(&self, inputs: &Matrix) -> Result<Vec<f64>> {
        if inputs.rows() == 0 {
            return Ok(Vec::new());
        }
        let q = self.check_query(inputs)?;
        Ok(q.iter_rows()
            .map(|row| {
                let k = self.cross_cov(row);
                self.y_scale.inverse(k.iter().zip(&self.alpha).map(|(a, b)| a * b).sum())
            })
            .collect())
    }

    /// Posterior mean and latent-function variance, in target units.
    pub fn predict(&self, inputs: &Matrix) -> Result<(Vec<f64>, Vec<f64>)> {
        if inputs.rows() == 0 {
            return Ok((Vec::new(), Vec::new()));
        }
        let q = self.check_query(inputs)?;
        let n = self.x.rows();
        let sy2 = self.y_scale.scale[0].powi(2);
        let mut mean = Vec::with_capacity(q.rows());
        let mut var = Vec::with_capacity(q.rows());
        for row in q.iter_rows() {
            let mut v = self.cross_cov(row);
            mean.push(self.y_scale.inverse(v.iter().zip(&self.alpha).map(|(a, b)| a * b).sum()));
            // forward substitution L v = k, column by column
            for j in 0..n {
                v[j] /= self.chol[(j, j)];
                let vj = v[j];
                let col = self.chol.col_as_slice(j);
                for (vi, lij) in v[j + 1..].iter_mut().zip(&col[j + 1..]) {
                    *vi -= lij * vj;
                }
            }
            let v2: f64 = v.iter().map(|t| t * t).sum();
            var.push((self.hyper.signal_variance - v2).max(0.0) * sy2);
        }
        Ok((mean, var))
    }
}

/// Fits kernel hyperparameters by multi-start marginal-likelihood maximization.
pub fn gp_fit(config: &GpConfig, data: &FidelityDataset) -> Result<GpModel> {
    if data.len() < 2 {
        return Err(Error::precondition(format!(
            "GP fit needs at least 2 rows, got {}",
            data.len()
        )));
    }
    let d = data.dim();
    let x_scale = Standardizer::fit(&data.inputs);
    let y_scale = Standardizer::fit_vec(&data.targets);
    let x = x_scale.transform(&data.inputs)?;
    let y = y_scale.forward_vec(&data.targets);

    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let opts = LbfgsOptions {
        max_iter: config.max_iter,
        ..LbfgsOptions::default()
    };
    let mut best: Option<(f64, Vec<f64>)> = None;
    for s in 0..config.restarts.max(1) {
        let start = if s == 0 { default_start(d) } else { random_start(d, &mut rng) };
        let f = |u: &[f64], grad: bool| objective(config.kernel, &x, &y, u, grad);
        if let Some(m) = optim::minimize(f, encode(&start), opts) {
            if best.as_ref().map_or(true, |(v, _)| m.f < *v) {
                best = Some((m.f, m.x));
            }
        }
    }
    let Some((_, u)) = best else {
        return Err(Error::Conditioning { jitter: JITTER_MAX });
    };
    let (hyper, _) = decode(&u);
    GpModel::condition(config.kernel, hyper, x_scale, y_scale, x, &y)
}

pub fn gp_predict(model: &GpModel, inputs: &Matrix) -> Result<(Vec<f64>, Vec<f64>)> {
    model.predict(inputs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::FidelityLevel;

    fn line(xs: &[f64], f: impl Fn(f64) -> f64) -> FidelityDataset {
        let x = Matrix::column(xs);
        let y = xs.iter().map(|&v| f(v)).collect();
        FidelityDataset::new(x, y, FidelityLevel::Hf).unwrap()
    }

    fn grid(n: usize) -> Vec<f64> {
        (0..n).map(|i| i as f64 / (n - 1) as f64).collect()
    }

    #[test]
    fn nll_gradient_matches_finite_differences() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let rows: Vec<[f64; 2]> = (0..12).map(|_| [rng.gen::<f64>(), rng.gen::<f64>()]).collect();
        let x = Matrix::from_rows(&rows, 2).unwrap();
        let y: Vec<f64> = rows.iter().map(|r| (3.0 * r[0]).sin() + r[1] * r[1]).collect();
        for kernel in [KernelKind::Matern52, KernelKind::Rbf] {
            let u = vec![0.3, -0.2, 0.1, 0.5];
            let (_, g) = objective(kernel, &x, &y, &u, true);
            for i in 0..u.len() {
                let h = 1e-6;
                let mut up = u.clone();
                let mut dn = u.clone();
                up[i] += h;
                dn[i] -= h;
                let fd = (objective(kernel, &x, &y, &up, false).0 - objective(kernel, &x, &y, &dn, false).0) / (2.0 * h);
                let rel = (fd - g[i]).abs() / fd.abs().max(1e-6);
                assert!(rel < 1e-5, "{kernel:?} coord {i}: analytic {} fd {fd}", g[i]);
            }
        }
    }

    #[test]
    fn sine_is_nearly_interpolated() {
        let xs = grid(5);
        let data = line(&xs, |v| (2.0 * std::f64::consts::PI * v).sin());
        let m = gp_fit(&GpConfig::new(KernelKind::Matern52), &data).unwrap();
        let (mean, var) = m.predict(&data.inputs).unwrap();
        let tol = 10.0 * m.noise_variance().sqrt();
        for ((p, t), v) in mean.iter().zip(&data.targets).zip(&var) {
            assert!((p - t).abs() <= tol.max(1e-9), "{p} vs {t}, tol {tol}");
            assert!(*v <= m.noise_variance() + 1e-8);
        }
    }

    #[test]
    fn constant_targets_give_constant_mean() {
        let data = line(&grid(8), |_| 4.25);
        let m = gp_fit(&GpConfig::new(KernelKind::Matern52), &data).unwrap();
        let (mean, _) = m.predict(&Matrix::column(&grid(31))).unwrap();
        assert!(mean.iter().all(|p| (p - 4.25).abs() < 1e-3), "{mean:?}");
    }

    #[test]
    fn linear_target_midpoints() {
        let data = line(&grid(20), |v| v);
        let m = gp_fit(&GpConfig::new(KernelKind::Matern52), &data).unwrap();
        let mids: Vec<f64> = (0..100).map(|i| (i as f64 + 0.5) / 100.0).collect();
        let (mean, _) = m.predict(&Matrix::column(&mids)).unwrap();
        let mse = mean.iter().zip(&mids).map(|(p, t)| (p - t).powi(2)).sum::<f64>() / 100.0;
        assert!(mse.sqrt() < 1e-3, "rmse {}", mse.sqrt());
    }

    #[test]
    fn fixed_hyper_interpolates_training_points() {
        let data = line(&grid(6), |v| v * v - 0.3);
        let hyper = GpHyper {
            length_scales: vec![0.7],
            signal_variance: 1.0,
            noise_variance: 1e-12,
        };
        let m = GpModel::with_hyper(KernelKind::Rbf, hyper, &data).unwrap();
        let (mean, var) = m.predict(&data.inputs).unwrap();
        for ((p, t), v) in mean.iter().zip(&data.targets).zip(&var) {
            assert!((p - t).abs() < 1e-6);
            assert!(*v <= 1e-6 * m.signal_variance());
        }
    }

    #[test]
    fn variance_reverts_to_prior_far_away() {
        let data = line(&grid(10), |v| (4.0 * v).cos());
        let m = gp_fit(&GpConfig::new(KernelKind::Matern52), &data).unwrap();
        let far = 1e3 * m.hyper().length_scales[0];
        let (_, var) = m.predict(&Matrix::column(&[far, -far])).unwrap();
        let prior = m.signal_variance() + m.noise_variance();
        assert!(var.iter().all(|&v| v >= 0.9 * prior), "{var:?} vs {prior}");
    }

    #[test]
    fn empty_query_and_shape_errors() {
        let data = line(&grid(4), |v| v);
        let m = gp_fit(&GpConfig::new(KernelKind::Rbf), &data).unwrap();
        let (a, b) = m.predict(&Matrix::zeros(0, 1)).unwrap();
        assert!(a.is_empty() && b.is_empty());
        assert!(matches!(m.predict(&Matrix::zeros(2, 3)), Err(Error::Shape { .. })));
        let one = line(&[0.5], |v| v);
        assert!(matches!(gp_fit(&GpConfig::new(KernelKind::Rbf), &one), Err(Error::Precondition(_))));
    }

    #[test]
    fn fit_is_deterministic() {
        let data = line(&grid(9), |v| (5.0 * v).sin());
        let cfg = GpConfig::new(KernelKind::Matern52).with_seed(11);
        let a = gp_fit(&cfg, &data).unwrap();
        let b = gp_fit(&cfg, &data).unwrap();
        assert_eq!(a.hyper(), b.hyper());
    }

    #[test]
    fn mean_only_path_matches_full_prediction() {
        let data = line(&grid(12), |v| (3.0 * v).sin());
        let m = gp_fit(&GpConfig::new(KernelKind::Rbf), &data).unwrap();
        let q = Matrix::column(&grid(17));
        assert_eq!(m.predict_mean(&q).unwrap(), m.predict(&q).unwrap().0);
    }

    #[test]
    fn large_problem_fits_on_a_default_worker_stack() {
        // rayon workers get 2 MiB stacks
        let handle = std::thread::Builder::new()
            .stack_size(2 << 20)
            .spawn(|| {
                let xs: Vec<f64> = (0..1000).map(|i| ((i * 7919) % 1000) as f64 / 1000.0).collect();
                let data = line(&xs, |v| (6.0 * v).sin());
                let hyper = GpHyper {
                    length_scales: vec![0.3],
                    signal_variance: 1.0,
                    noise_variance: 1e-6,
                };
                let m = GpModel::with_hyper(KernelKind::Matern52, hyper, &data).unwrap();
                let (mean, var) = m.predict(&Matrix::column(&grid(800))).unwrap();
                mean.len() + var.len()
            })
            .unwrap();
        assert_eq!(handle.join().unwrap(), 1600);
    }

    #[test]
    fn duplicated_inputs_factorize_without_noise() {
        let x = Matrix::column(&[0.1, 0.1, 0.9]);
        let data = FidelityDataset::new(x, vec![1.0, 1.0, 2.0], FidelityLevel::Hf).unwrap();
        let hyper = GpHyper {
            length_scales: vec![0.5],
            signal_variance: 1.0,
            noise_variance: 0.0,
        };
        let m = GpModel::with_hyper(KernelKind::Matern52, hyper, &data).unwrap();
        assert!(m.jitter() <= JITTER_MAX);
        let (mean, _) = m.predict(&Matrix::column(&[0.1])).unwrap();
        assert!((mean[0] - 1.0).abs() < 1e-4);
    }
}
