//! Closed-form bi- and tri-fidelity analytical benchmarks and uniform design sampling.
//!
//! Bi-fidelity: Forrester (1D), Booth (2D), Branin (2D), Park91A (4D),
//! Hartmann (6D), Borehole (8D). Tri-fidelity: Forrester (1D), Rosenbrock (D),
//! shifted-rotated Rastrigin (D).

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dataset::{FidelityDataset, FidelityLevel};
use crate::error::{Error, Result};
use crate::matrix::Matrix;

/// Bi-fidelity Forrester low-fidelity constants: `f_l = A f_h + B (x - 0.5) + C`.
pub const FORRESTER_A: f64 = 0.5;
pub const FORRESTER_B: f64 = 10.0;
pub const FORRESTER_C: f64 = -5.0;

pub const HARTMANN_A: [[f64; 6]; 4] = [
    [10.0, 3.0, 17.0, 3.5, 1.7, 8.0],
    [0.05, 10.0, 17.0, 0.1, 8.0, 14.0],
    [3.0, 3.5, 1.7, 10.0, 17.0, 8.0],
    [17.0, 8.0, 0.05, 10.0, 0.1, 14.0],
];

pub const HARTMANN_P: [[f64; 6]; 4] = [
    [0.1312, 0.1696, 0.5569, 0.0124, 0.8283, 0.5886],
    [0.2329, 0.4135, 0.8307, 0.3736, 0.1004, 0.9991],
    [0.2348, 0.1451, 0.3522, 0.2883, 0.3047, 0.6650],
    [0.4047, 0.8828, 0.8732, 0.5743, 0.1091, 0.0381],
];

pub const HARTMANN_ALPHA_HF: [f64; 4] = [1.0, 1.2, 3.0, 3.2];
pub const HARTMANN_ALPHA_LF: [f64; 4] = [0.5, 0.5, 2.0, 4.0];

/// Borehole input box, ordered `(r_w, r, T_u, H_u, T_l, H_l, L, K_w)`.
pub const BOREHOLE_BOUNDS: [(f64, f64); 8] = [
    (0.05, 0.15),
    (100.0, 50_000.0),
    (63_070.0, 115_600.0),
    (990.0, 1_110.0),
    (63.1, 116.0),
    (700.0, 820.0),
    (1_120.0, 1_680.0),
    (9_855.0, 12_045.0),
];

pub const RASTRIGIN_THETA: f64 = 0.2;
pub const RASTRIGIN_SHIFT: f64 = 0.1;
/// Fidelity parameters φ for HF, MF, LF.
pub const RASTRIGIN_PHI: [f64; 3] = [10_000.0, 5_000.0, 2_500.0];

/// Park91A divides by x1²; the lower bound stays off zero.
pub const PARK91A_X1_FLOOR: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BenchmarkId {
    Forrester2f,
    Booth2f,
    Branin2f,
    Park91a2f,
    Hartmann6_2f,
    Borehole2f,
    Forrester3f,
    Rosenbrock3f,
    Rastrigin3f,
}

impl BenchmarkId {
    pub const ALL: [BenchmarkId; 9] = [
        BenchmarkId::Forrester2f,
        BenchmarkId::Booth2f,
        BenchmarkId::Branin2f,
        BenchmarkId::Park91a2f,
        BenchmarkId::Hartmann6_2f,
        BenchmarkId::Borehole2f,
        BenchmarkId::Forrester3f,
        BenchmarkId::Rosenbrock3f,
        BenchmarkId::Rastrigin3f,
    ];

    pub const BIFIDELITY: [BenchmarkId; 6] = [
        BenchmarkId::Forrester2f,
        BenchmarkId::Booth2f,
        BenchmarkId::Branin2f,
        BenchmarkId::Park91a2f,
        BenchmarkId::Hartmann6_2f,
        BenchmarkId::Borehole2f,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            BenchmarkId::Forrester2f => "forrester2f",
            BenchmarkId::Booth2f => "booth2f",
            BenchmarkId::Branin2f => "branin2f",
            BenchmarkId::Park91a2f => "park91a2f",
            BenchmarkId::Hartmann6_2f => "hartmann6_2f",
            BenchmarkId::Borehole2f => "borehole2f",
            BenchmarkId::Forrester3f => "forrester3f",
            BenchmarkId::Rosenbrock3f => "rosenbrock3f",
            BenchmarkId::Rastrigin3f => "rastrigin3f",
        }
    }

    pub fn levels(self) -> usize {
        match self {
            BenchmarkId::Forrester3f | BenchmarkId::Rosenbrock3f | BenchmarkId::Rastrigin3f => 3,
            _ => 2,
        }
    }

    /// Fixed input dimension, or `None` for the families parameterized by D.
    pub fn fixed_dim(self) -> Option<usize> {
        match self {
            BenchmarkId::Forrester2f | BenchmarkId::Forrester3f => Some(1),
            BenchmarkId::Booth2f | BenchmarkId::Branin2f => Some(2),
            BenchmarkId::Park91a2f => Some(4),
            BenchmarkId::Hartmann6_2f => Some(6),
            BenchmarkId::Borehole2f => Some(8),
            BenchmarkId::Rosenbrock3f | BenchmarkId::Rastrigin3f => None,
        }
    }

    pub fn registry() -> String {
        Self::ALL.iter().map(|b| b.as_str()).collect::<Vec<_>>().join(", ")
    }
}

impl fmt::Display for BenchmarkId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for BenchmarkId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase();
        Self::ALL
            .iter()
            .copied()
            .find(|b| b.as_str() == key)
            .ok_or_else(|| {
                Error::Config(format!(
                    "unknown benchmark `{s}`; valid ids: {}",
                    Self::registry()
                ))
            })
    }
}

/// One benchmark family instantiated at a concrete dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchmarkSpec {
    pub id: BenchmarkId,
    pub dim: usize,
    pub domain: Vec<(f64, f64)>,
}

impl BenchmarkSpec {
    /// `dim` is required for Rosenbrock and Rastrigin (defaults to 2) and must
    /// match the fixed dimension for every other family when given.
    pub fn new(id: BenchmarkId, dim: Option<usize>) -> Result<Self> {
        let dim = match (id.fixed_dim(), dim) {
            (Some(d), None) => d,
            (Some(d), Some(req)) if req == d => d,
            (Some(d), Some(req)) => {
                return Err(Error::Config(format!(
                    "{id} is {d}-dimensional, not {req}-dimensional"
                )))
            }
            (None, Some(req)) if req >= 2 => req,
            (None, Some(req)) => {
                return Err(Error::Config(format!("{id} needs D >= 2, got {req}")))
            }
            (None, None) => 2,
        };
        let domain = match id {
            BenchmarkId::Forrester2f | BenchmarkId::Forrester3f => vec![(0.0, 1.0)],
            BenchmarkId::Booth2f => vec![(-10.0, 10.0); 2],
            BenchmarkId::Branin2f => vec![(-5.0, 10.0), (0.0, 15.0)],
            BenchmarkId::Park91a2f => {
                let mut d = vec![(0.0, 1.0); 4];
                d[0].0 = PARK91A_X1_FLOOR;
                d
            }
            BenchmarkId::Hartmann6_2f => vec![(0.0, 1.0); 6],
            BenchmarkId::Borehole2f => BOREHOLE_BOUNDS.to_vec(),
            BenchmarkId::Rosenbrock3f => vec![(-2.0, 2.0); dim],
            BenchmarkId::Rastrigin3f => vec![(-0.1, 0.2); dim],
        };
        Ok(BenchmarkSpec { id, dim, domain })
    }

    pub fn lookup(name: &str, dim: Option<usize>) -> Result<Self> {
        Self::new(name.parse()?, dim)
    }

    pub fn levels(&self) -> usize {
        self.id.levels()
    }

    pub fn fidelities(&self) -> &'static [FidelityLevel] {
        if self.levels() == 3 {
            &FidelityLevel::ALL
        } else {
            &[FidelityLevel::Lf, FidelityLevel::Hf]
        }
    }

    /// Dataset name used for file naming, e.g. `rastrigin3f_5d` for D-parameterized families.
    pub fn name(&self) -> String {
        match self.id.fixed_dim() {
            Some(_) => self.id.as_str().to_string(),
            None => format!("{}_{}d", self.id, self.dim),
        }
    }

    fn check_input(&self, x: &[f64]) -> Result<()> {
        if x.len() != self.dim {
            return Err(Error::shape(format!("{}-dimensional input", self.dim), x.len()));
        }
        for (coord, (&v, &(lower, upper))) in x.iter().zip(&self.domain).enumerate() {
            if !(v >= lower && v <= upper) {
                return Err(Error::Domain {
                    coord,
                    value: v,
                    lower,
                    upper,
                });
            }
        }
        Ok(())
    }

    fn check_level(&self, level: FidelityLevel) -> Result<()> {
        if level == FidelityLevel::Mf && self.levels() == 2 {
            return Err(Error::Level {
                level: level.to_string(),
                what: format!("bi-fidelity benchmark {}", self.id),
            });
        }
        Ok(())
    }

    /// Exact value of the benchmark at `x` for the requested fidelity.
    pub fn evaluate(&self, level: FidelityLevel, x: &[f64]) -> Result<f64> {
        self.check_level(level)?;
        self.check_input(x)?;
        Ok(match self.id {
            BenchmarkId::Forrester2f => forrester2f(level, x[0]),
            BenchmarkId::Booth2f => booth2f(level, x[0], x[1]),
            BenchmarkId::Branin2f => branin2f(level, x[0], x[1]),
            BenchmarkId::Park91a2f => park91a2f(level, x),
            BenchmarkId::Hartmann6_2f => hartmann6_2f(level, x),
            BenchmarkId::Borehole2f => borehole2f(level, x),
            BenchmarkId::Forrester3f => forrester3f(level, x[0]),
            BenchmarkId::Rosenbrock3f => rosenbrock3f(level, x),
            BenchmarkId::Rastrigin3f => rastrigin3f(level, x),
        })
    }
}

/// Evaluates a two-level benchmark at LF or HF.
pub fn eval_bifidelity(spec: &BenchmarkSpec, level: FidelityLevel, x: &[f64]) -> Result<f64> {
    if spec.levels() != 2 {
        return Err(Error::Level {
            level: level.to_string(),
            what: format!("eval_bifidelity on tri-fidelity benchmark {}", spec.id),
        });
    }
    spec.evaluate(level, x)
}

/// Evaluates a three-level benchmark at LF, MF or HF.
pub fn eval_trifidelity(spec: &BenchmarkSpec, level: FidelityLevel, x: &[f64]) -> Result<f64> {
    if spec.levels() != 3 {
        return Err(Error::Level {
            level: level.to_string(),
            what: format!("eval_trifidelity on bi-fidelity benchmark {}", spec.id),
        });
    }
    spec.evaluate(level, x)
}

fn forrester_base(x: f64) -> f64 {
    (6.0 * x - 2.0).powi(2) * (12.0 * x - 4.0).sin()
}

fn forrester2f(level: FidelityLevel, x: f64) -> f64 {
    let fh = forrester_base(x);
    match level {
        FidelityLevel::Lf => FORRESTER_A * fh + FORRESTER_B * (x - 0.5) + FORRESTER_C,
        _ => fh,
    }
}

fn booth_hf(x1: f64, x2: f64) -> f64 {
    (x1 + 2.0 * x2 - 7.0).powi(2) + (2.0 * x1 + x2 - 5.0).powi(2)
}

fn booth2f(level: FidelityLevel, x1: f64, x2: f64) -> f64 {
    match level {
        FidelityLevel::Lf => booth_hf(0.4 * x1, x2) + 1.7 * x1 * x2 - x1 + 2.0 * x2,
        _ => booth_hf(x1, x2),
    }
}

fn branin_base(x1: f64, x2: f64) -> f64 {
    let t1 = x2 - 5.1 * x1 * x1 / (4.0 * PI * PI) + 5.0 * x1 / PI - 6.0;
    let t2 = 10.0 * x1.cos() * (1.0 - 1.0 / (8.0 * PI));
    t1 * t1 + t2 + 10.0
}

fn branin2f(level: FidelityLevel, x1: f64, x2: f64) -> f64 {
    match level {
        FidelityLevel::Lf => {
            branin_base(0.7 * x1, 0.7 * x2) - 15.75 * x2 + 20.0 * (0.9 + x1).powi(2) - 50.0
        }
        _ => branin_base(x1, x2) - 22.5 * x2,
    }
}

fn park91a_hf(x: &[f64]) -> f64 {
    let (x1, x2, x3, x4) = (x[0], x[1], x[2], x[3]);
    let t1 = 0.5 * x1 * ((1.0 + (x2 + x3 * x3) * x4 / (x1 * x1)).sqrt() - 1.0);
    let t2 = (x1 + 3.0 * x4) * (1.0 + x3.sin()).exp();
    t1 + t2
}

fn park91a2f(level: FidelityLevel, x: &[f64]) -> f64 {
    let fh = park91a_hf(x);
    match level {
        FidelityLevel::Lf => {
            (1.0 + x[0].sin() / 10.0) * fh - 2.0 * x[0] + x[1] * x[1] + x[2] * x[2] + 0.5
        }
        _ => fh,
    }
}

/// Low-fidelity surrogate for `exp` used by the Hartmann LF model.
pub fn hartmann_f_exp(v: f64) -> f64 {
    let e = (-4.0f64 / 9.0).exp();
    (e + e * (v + 4.0) / 9.0).powi(9)
}

fn hartmann6_2f(level: FidelityLevel, x: &[f64]) -> f64 {
    let mut sum = 0.0;
    for i in 0..4 {
        let arg: f64 = -(0..6)
            .map(|j| HARTMANN_A[i][j] * (x[j] - HARTMANN_P[i][j]).powi(2))
            .sum::<f64>();
        sum += match level {
            FidelityLevel::Lf => HARTMANN_ALPHA_LF[i] * hartmann_f_exp(arg),
            _ => HARTMANN_ALPHA_HF[i] * arg.exp(),
        };
    }
    -(2.58 + sum) / 1.94
}

/// Borehole base flow-rate function with scale `a` and offset `b`.
pub fn borehole_base(x: &[f64], a: f64, b: f64) -> f64 {
    let (rw, r, tu, hu, tl, hl, l, kw) = (x[0], x[1], x[2], x[3], x[4], x[5], x[6], x[7]);
    let log_ratio = (r / rw).ln();
    a * tu * (hu - hl) / (log_ratio * (b + 2.0 * l * tu / (log_ratio * rw * rw * kw) + tu / tl))
}

fn borehole2f(level: FidelityLevel, x: &[f64]) -> f64 {
    match level {
        FidelityLevel::Lf => borehole_base(x, 5.0, 1.5),
        _ => borehole_base(x, 2.0 * PI, 1.0),
    }
}

fn forrester3f(level: FidelityLevel, x: f64) -> f64 {
    let s = (12.0 * x - 4.0).sin();
    match level {
        FidelityLevel::Hf => (5.5 * x - 2.5).powi(2) * s,
        FidelityLevel::Mf => 0.75 * (6.0 * x - 2.0).powi(2) * s + 5.0 * (x - 0.5) - 2.0,
        FidelityLevel::Lf => 0.5 * (6.0 * x - 2.0).powi(2) * s + 10.0 * (x - 0.5) - 5.0,
    }
}

fn rosenbrock_hf(x: &[f64]) -> f64 {
    x.windows(2)
        .map(|w| 100.0 * (w[1] - w[0] * w[0]).powi(2) + (1.0 - w[0]).powi(2))
        .sum()
}

fn rosenbrock3f(level: FidelityLevel, x: &[f64]) -> f64 {
    let half_sum: f64 = x.iter().map(|v| 0.5 * v).sum();
    match level {
        FidelityLevel::Hf => rosenbrock_hf(x),
        FidelityLevel::Mf => {
            x.windows(2)
                .map(|w| 50.0 * (w[1] - w[0] * w[0]).powi(2) + (-2.0 - w[0]).powi(2))
                .sum::<f64>()
                - half_sum
        }
        FidelityLevel::Lf => {
            let quarter_sum: f64 = x.iter().map(|v| 0.25 * v).sum();
            (rosenbrock_hf(x) - 4.0 - half_sum) / (10.0 + quarter_sum)
        }
    }
}

/// Rotation used by the Rastrigin family: planar rotations by `theta` over the
/// coordinate pairs (1,2), (2,3), …, (D-1,D), applied in that order. For D = 2
/// this is the standard 2x2 rotation matrix.
pub fn rastrigin_rotation(dim: usize, theta: f64) -> Matrix {
    let mut r = Matrix::zeros(dim, dim);
    for i in 0..dim {
        r.set(i, i, 1.0);
    }
    let (s, c) = theta.sin_cos();
    for k in 0..dim.saturating_sub(1) {
        // r <- G(k, k+1) * r
        for col in 0..dim {
            let a = r.get(k, col);
            let b = r.get(k + 1, col);
            r.set(k, col, c * a - s * b);
            r.set(k + 1, col, s * a + c * b);
        }
    }
    r
}

fn rastrigin_theta_of(phi: f64) -> f64 {
    1.0 - 0.0001 * phi
}

/// Fidelity error term `e_r(z, φ)`.
pub fn rastrigin_error(z: &[f64], phi: f64) -> f64 {
    let t = rastrigin_theta_of(phi);
    let (a, w, b) = (t, 10.0 * PI * t, 0.5 * PI * t);
    z.iter().map(|&zj| a * (w * zj + b + PI).cos().powi(2)).sum()
}

fn rastrigin3f(level: FidelityLevel, x: &[f64]) -> f64 {
    let rot = rastrigin_rotation(x.len(), RASTRIGIN_THETA);
    let shifted: Vec<f64> = x.iter().map(|v| v - RASTRIGIN_SHIFT).collect();
    let z: Vec<f64> = rot
        .iter_rows()
        .map(|row| row.iter().zip(&shifted).map(|(a, b)| a * b).sum())
        .collect();
    let base: f64 = z
        .iter()
        .map(|&zj| zj * zj + 1.0 - (10.0 * PI * zj).cos())
        .sum();
    let phi = match level {
        FidelityLevel::Hf => RASTRIGIN_PHI[0],
        FidelityLevel::Mf => RASTRIGIN_PHI[1],
        FidelityLevel::Lf => RASTRIGIN_PHI[2],
    };
    base + rastrigin_error(&z, phi)
}

/// `n` points drawn i.i.d. uniformly over a box.
pub fn sample_box(domain: &[(f64, f64)], n: usize, seed: u64) -> Result<Matrix> {
    if n == 0 {
        return Err(Error::EmptyDesign);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut m = Matrix::zeros(n, domain.len());
    for i in 0..n {
        for (v, &(lo, hi)) in m.row_mut(i).iter_mut().zip(domain) {
            *v = lo + (hi - lo) * rng.gen::<f64>();
        }
    }
    Ok(m)
}

pub fn sample_uniform(spec: &BenchmarkSpec, n: usize, seed: u64) -> Result<Matrix> {
    sample_box(&spec.domain, n, seed)
}

/// Pairs inputs with exact evaluations at `level`.
pub fn make_dataset(
    spec: &BenchmarkSpec,
    level: FidelityLevel,
    inputs: &Matrix,
) -> Result<FidelityDataset> {
    if inputs.cols() != spec.dim {
        return Err(Error::shape(format!("{} input columns", spec.dim), inputs.cols()));
    }
    spec.check_level(level)?;
    let targets = inputs
        .iter_rows()
        .map(|x| spec.evaluate(level, x))
        .collect::<Result<Vec<_>>>()?;
    FidelityDataset::new(inputs.clone(), targets, level)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn spec(id: BenchmarkId) -> BenchmarkSpec {
        BenchmarkSpec::new(id, None).unwrap()
    }

    #[test]
    fn exact_zeros() {
        assert!(spec(BenchmarkId::Forrester2f).evaluate(FidelityLevel::Hf, &[1.0 / 3.0]).unwrap().abs() < 1e-15);
        assert_eq!(spec(BenchmarkId::Booth2f).evaluate(FidelityLevel::Hf, &[1.0, 3.0]).unwrap(), 0.0);
        let rb = BenchmarkSpec::new(BenchmarkId::Rosenbrock3f, Some(5)).unwrap();
        assert_eq!(rb.evaluate(FidelityLevel::Hf, &[1.0; 5]).unwrap(), 0.0);
        let ra = spec(BenchmarkId::Rastrigin3f);
        assert_eq!(ra.evaluate(FidelityLevel::Hf, &[0.1, 0.1]).unwrap(), 0.0);
    }

    #[test]
    fn level_and_shape_errors() {
        let f = spec(BenchmarkId::Forrester2f);
        assert!(matches!(f.evaluate(FidelityLevel::Mf, &[0.5]), Err(Error::Level { .. })));
        assert!(matches!(f.evaluate(FidelityLevel::Hf, &[0.5, 0.5]), Err(Error::Shape { .. })));
        assert!(matches!(f.evaluate(FidelityLevel::Hf, &[1.5]), Err(Error::Domain { .. })));
        assert!(matches!(f.evaluate(FidelityLevel::Hf, &[f64::NAN]), Err(Error::Domain { .. })));
        assert!(eval_trifidelity(&f, FidelityLevel::Hf, &[0.5]).is_err());
        let f3 = spec(BenchmarkId::Forrester3f);
        assert!(eval_bifidelity(&f3, FidelityLevel::Hf, &[0.5]).is_err());
        assert!(eval_trifidelity(&f3, FidelityLevel::Mf, &[0.5]).is_ok());
    }

    #[test]
    fn park91a_excludes_singular_corner() {
        let p = spec(BenchmarkId::Park91a2f);
        assert!(p.evaluate(FidelityLevel::Hf, &[0.0, 0.5, 0.5, 0.5]).is_err());
        assert!(p.evaluate(FidelityLevel::Hf, &[1e-8, 0.5, 0.5, 0.5]).unwrap().is_finite());
    }

    #[test]
    fn unknown_id_lists_registry() {
        let err = BenchmarkSpec::lookup("ackley", None).unwrap_err().to_string();
        assert!(err.contains("forrester2f") && err.contains("rastrigin3f"));
        assert!(BenchmarkSpec::new(BenchmarkId::Booth2f, Some(3)).is_err());
        assert!(BenchmarkSpec::new(BenchmarkId::Rosenbrock3f, Some(1)).is_err());
    }

    #[test]
    fn rotation_2d_matches_closed_form() {
        let r = rastrigin_rotation(2, 0.2);
        let (s, c) = 0.2f64.sin_cos();
        assert_eq!(r.as_slice(), &[c, -s, s, c]);
    }

    #[test]
    fn sampling_is_seeded_and_contained() {
        let f = spec(BenchmarkId::Forrester2f);
        let a = sample_uniform(&f, 1000, 7).unwrap();
        let b = sample_uniform(&f, 1000, 7).unwrap();
        assert_eq!(a, b);
        assert!(a.as_slice().iter().all(|v| (0.0..=1.0).contains(v)));
        assert!(matches!(sample_uniform(&f, 0, 7), Err(Error::EmptyDesign)));
        let one = sample_uniform(&spec(BenchmarkId::Borehole2f), 1, 3).unwrap();
        for (v, (lo, hi)) in one.row(0).iter().zip(BOREHOLE_BOUNDS) {
            assert!(*v >= lo && *v <= hi);
        }
    }

    #[test]
    fn booth_sample_mean_near_midpoint() {
        // LLN: mean of n uniforms on [-10,10] has standard error 20/sqrt(12 n)
        let b = spec(BenchmarkId::Booth2f);
        let n = 10_000;
        let x = sample_uniform(&b, n, 11).unwrap();
        let se = 20.0 / (12.0 * n as f64).sqrt();
        for j in 0..2 {
            let mean = x.col_values(j).iter().sum::<f64>() / n as f64;
            assert!(mean.abs() < 3.0 * se, "column {j}: mean {mean}, se {se}");
        }
    }

    #[test]
    fn make_dataset_forrester_points() {
        let f = spec(BenchmarkId::Forrester2f);
        let x = Matrix::column(&[0.0, 1.0 / 3.0, 1.0]);
        let hf = make_dataset(&f, FidelityLevel::Hf, &x).unwrap();
        assert_eq!(hf.level, FidelityLevel::Hf);
        assert!((hf.targets[0] - 4.0 * (-4.0f64).sin()).abs() < 1e-12);
        assert!(hf.targets[1].abs() < 1e-12);
        assert!((hf.targets[2] - 16.0 * 8.0f64.sin()).abs() < 1e-12);
        let lf = make_dataset(&f, FidelityLevel::Lf, &x).unwrap();
        for i in 0..3 {
            let xi = x.get(i, 0);
            let expect = 0.5 * hf.targets[i] + 10.0 * (xi - 0.5) - 5.0;
            assert!((lf.targets[i] - expect).abs() < 1e-12);
        }
        let empty = make_dataset(&f, FidelityLevel::Hf, &Matrix::zeros(0, 1)).unwrap();
        assert!(empty.is_empty());
    }

    proptest! {
        #[test]
        fn rotation_is_orthogonal(dim in 2usize..8, v in proptest::collection::vec(-10.0f64..10.0, 8)) {
            let r = rastrigin_rotation(dim, RASTRIGIN_THETA);
            let v = &v[..dim];
            let rv: Vec<f64> = r.iter_rows().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect();
            let n0 = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            let n1 = rv.iter().map(|x| x * x).sum::<f64>().sqrt();
            prop_assert!((n0 - n1).abs() < 1e-12);
        }

        #[test]
        fn rastrigin_error_bounded(z in proptest::collection::vec(-5.0f64..5.0, 1..6), which in 0usize..3) {
            let phi = RASTRIGIN_PHI[which];
            let a = 1.0 - 0.0001 * phi;
            prop_assert!(rastrigin_error(&z, phi).abs() <= z.len() as f64 * a + 1e-15);
        }

        #[test]
        fn forrester_lf_identity(x in 0.0f64..=1.0) {
            let f = BenchmarkSpec::new(BenchmarkId::Forrester2f, None).unwrap();
            let hf = f.evaluate(FidelityLevel::Hf, &[x]).unwrap();
            let lf = f.evaluate(FidelityLevel::Lf, &[x]).unwrap();
            prop_assert!((lf - (0.5 * hf + 10.0 * (x - 0.5) - 5.0)).abs() < 1e-12);
        }

        #[test]
        fn evaluators_are_pure(id in 0usize..9, seed in 0u64..1000) {
            let s = BenchmarkSpec::new(BenchmarkId::ALL[id], None).unwrap();
            let x = sample_uniform(&s, 1, seed).unwrap();
            for &lvl in s.fidelities() {
                let a = s.evaluate(lvl, x.row(0)).unwrap();
                let b = s.evaluate(lvl, x.row(0)).unwrap();
                prop_assert_eq!(a.to_bits(), b.to_bits());
            }
        }
    }
}
