//! Network topologies shared by the single- and multi-fidelity regressors.

use rand::Rng;

use super::layers::{Activation, Dense, Stack};
use crate::matrix::Matrix;

/// How hidden features are turned into per-fidelity outputs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Topology {
    /// Hidden stack followed by one linear output.
    Plain,
    /// Shared trunk `h(x)`; head 0 reads `h`, head k reads `(h, y_0, …, y_{k-1})`.
    Chained { heads: usize },
    /// Shared trunk `u(x)` followed by a single linear mixing layer `W u + b`.
    Mixing { outputs: usize },
}

impl Topology {
    pub fn outputs(self) -> usize {
        match self {
            Topology::Plain => 1,
            Topology::Chained { heads } => heads,
            Topology::Mixing { outputs } => outputs,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Network {
    Plain(Stack),
    Chained { trunk: Stack, heads: Vec<Stack> },
    Mixing { trunk: Stack, mix: Dense },
}

/// Intermediates retained by a forward pass for backpropagation.
pub struct ForwardCache {
    trunk: Vec<Matrix>,
    heads: Vec<Vec<Matrix>>,
    pub output: Matrix,
}

fn hidden_stack<R: Rng>(input: usize, widths: &[usize], act: Activation, rng: &mut R) -> Stack {
    let mut layers = Vec::with_capacity(widths.len());
    let mut prev = input;
    for &w in widths {
        layers.push(Dense::init(prev, w, act, rng));
        prev = w;
    }
    Stack::new(layers)
}

impl Network {
    pub fn build<R: Rng>(
        topology: Topology,
        input: usize,
        widths: &[usize],
        act: Activation,
        rng: &mut R,
    ) -> Network {
        match topology {
            Topology::Plain => {
                let mut s = hidden_stack(input, widths, act, rng);
                let last = s.output_width(input);
                s.layers.push(Dense::init(last, 1, Activation::Identity, rng));
                Network::Plain(s)
            }
            Topology::Chained { heads } => {
                let trunk = hidden_stack(input, widths, act, rng);
                let h = trunk.output_width(input);
                let heads = (0..heads)
                    .map(|k| {
                        if k == 0 {
                            Stack::new(vec![Dense::init(h, 1, Activation::Identity, rng)])
                        } else {
                            Stack::new(vec![
                                Dense::init(h + k, h, act, rng),
                                Dense::init(h, 1, Activation::Identity, rng),
                            ])
                        }
                    })
                    .collect();
                Network::Chained { trunk, heads }
            }
            Topology::Mixing { outputs } => {
                let trunk = hidden_stack(input, widths, act, rng);
                let u = trunk.output_width(input);
                let mix = Dense::init(u, outputs, Activation::Identity, rng);
                Network::Mixing { trunk, mix }
            }
        }
    }

    pub fn outputs(&self) -> usize {
        match self {
            Network::Plain(_) => 1,
            Network::Chained { heads, .. } => heads.len(),
            Network::Mixing { mix, .. } => mix.outputs,
        }
    }

    pub fn param_count(&self) -> usize {
        match self {
            Network::Plain(s) => s.param_count(),
            Network::Chained { trunk, heads } => {
                trunk.param_count() + heads.iter().map(Stack::param_count).sum::<usize>()
            }
            Network::Mixing { trunk, mix } => trunk.param_count() + mix.param_count(),
        }
    }

    pub fn params(&self) -> Vec<f64> {
        let mut p = vec![0.0; self.param_count()];
        match self {
            Network::Plain(s) => s.write_params(&mut p),
            Network::Chained { trunk, heads } => {
                let mut off = trunk.param_count();
                trunk.write_params(&mut p[..off]);
                for h in heads {
                    h.write_params(&mut p[off..off + h.param_count()]);
                    off += h.param_count();
                }
            }
            Network::Mixing { trunk, mix } => {
                let t = trunk.param_count();
                trunk.write_params(&mut p[..t]);
                mix.write_params(&mut p[t..]);
            }
        }
        p
    }

    pub fn set_params(&mut self, p: &[f64]) {
        assert_eq!(p.len(), self.param_count(), "parameter vector length");
        match self {
            Network::Plain(s) => s.read_params(p),
            Network::Chained { trunk, heads } => {
                let mut off = trunk.param_count();
                trunk.read_params(&p[..off]);
                for h in heads {
                    let n = h.param_count();
                    h.read_params(&p[off..off + n]);
                    off += n;
                }
            }
            Network::Mixing { trunk, mix } => {
                let t = trunk.param_count();
                trunk.read_params(&p[..t]);
                mix.read_params(&p[t..]);
            }
        }
    }

    pub fn forward(&self, x: &Matrix) -> Matrix {
        self.forward_cached(x).output
    }

    pub fn forward_cached(&self, x: &Matrix) -> ForwardCache {
        match self {
            Network::Plain(s) => {
                let trunk = s.forward_cached(x);
                let output = trunk.last().unwrap().clone();
                ForwardCache {
                    trunk,
                    heads: Vec::new(),
                    output,
                }
            }
            Network::Chained { trunk, heads } => {
                let t = trunk.forward_cached(x);
                let h = t.last().unwrap();
                let mut output = Matrix::zeros(x.rows(), heads.len());
                let mut input = h.clone();
                let mut head_acts = Vec::with_capacity(heads.len());
                for (k, head) in heads.iter().enumerate() {
                    let acts = head.forward_cached(&input);
                    let y = acts.last().unwrap().col_values(0);
                    for (i, &v) in y.iter().enumerate() {
                        output.set(i, k, v);
                    }
                    head_acts.push(acts);
                    if k + 1 < heads.len() {
                        input = input.with_column(&y).expect("row counts agree");
                    }
                }
                ForwardCache {
                    trunk: t,
                    heads: head_acts,
                    output,
                }
            }
            Network::Mixing { trunk, mix } => {
                let t = trunk.forward_cached(x);
                let output = mix.forward(t.last().unwrap());
                ForwardCache {
                    trunk: t,
                    heads: Vec::new(),
                    output,
                }
            }
        }
    }

    /// Gradient of a scalar loss w.r.t. the flat parameter vector, given
    /// `d_out = dL/d(output)` of shape `n x outputs`.
    pub fn backward(&self, cache: &ForwardCache, d_out: &Matrix) -> Vec<f64> {
        let mut grad = vec![0.0; self.param_count()];
        match self {
            Network::Plain(s) => {
                s.backward(&cache.trunk, d_out.clone(), &mut grad);
            }
            Network::Chained { trunk, heads } => {
                let n = d_out.rows();
                let t_params = trunk.param_count();
                let width = cache.trunk.last().unwrap().cols();
                let mut head_off = Vec::with_capacity(heads.len());
                let mut off = t_params;
                for h in heads {
                    head_off.push(off);
                    off += h.param_count();
                }
                // upstream gradient on each head output, accumulated from later heads
                let mut d_y: Vec<Vec<f64>> = (0..heads.len()).map(|k| d_out.col_values(k)).collect();
                let mut d_h = Matrix::zeros(n, width);
                for (k, head) in heads.iter().enumerate().rev() {
                    let g = &mut grad[head_off[k]..head_off[k] + head.param_count()];
                    let d_in = head.backward(&cache.heads[k], Matrix::column(&d_y[k]), g);
                    for i in 0..n {
                        let row = d_in.row(i);
                        for (dh, &v) in d_h.row_mut(i).iter_mut().zip(&row[..width]) {
                            *dh += v;
                        }
                        for j in 0..k {
                            d_y[j][i] += row[width + j];
                        }
                    }
                }
                trunk.backward(&cache.trunk, d_h, &mut grad[..t_params]);
            }
            Network::Mixing { trunk, mix } => {
                let t_params = trunk.param_count();
                let u = cache.trunk.last().unwrap();
                let d_u = mix.backward(u, &cache.output, d_out, &mut grad[t_params..]);
                trunk.backward(&cache.trunk, d_u, &mut grad[..t_params]);
            }
        }
        grad
    }

    /// Number of inputs of the final mixing layer (GPmimic latent width).
    pub fn latent_width(&self) -> Option<usize> {
        match self {
            Network::Mixing { mix, .. } => Some(mix.inputs),
            _ => None,
        }
    }

    /// Applies the mixing layer of a `Mixing` network to a latent vector.
    pub fn mix_latent(&self, u: &[f64]) -> Option<Vec<f64>> {
        match self {
            Network::Mixing { mix, .. } if u.len() == mix.inputs => {
                let m = Matrix::from_vec(1, u.len(), u.to_vec()).ok()?;
                Some(mix.forward(&m).row(0).to_vec())
            }
            _ => None,
        }
    }

    pub fn mix_bias(&self) -> Option<&[f64]> {
        match self {
            Network::Mixing { mix, .. } => Some(&mix.bias),
            _ => None,
        }
    }
}
