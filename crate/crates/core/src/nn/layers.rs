use rand::Rng;

use crate::matrix::Matrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Activation {
    Tanh,
    Relu,
    Identity,
}

impl Activation {
    #[inline]
    fn apply(self, z: f64) -> f64 {
        match self {
            Activation::Tanh => z.tanh(),
            Activation::Relu => z.max(0.0),
            Activation::Identity => z,
        }
    }

    /// Derivative expressed through the activated output `a`.
    #[inline]
    fn derivative_from_output(self, a: f64) -> f64 {
        match self {
            Activation::Tanh => 1.0 - a * a,
            Activation::Relu => {
                if a > 0.0 {
                    1.0
                } else {
                    0.0
                }
            }
            Activation::Identity => 1.0,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Activation::Tanh => "tanh",
            Activation::Relu => "relu",
            Activation::Identity => "identity",
        }
    }

    pub fn parse(s: &str) -> Option<Activation> {
        match s.trim().to_ascii_lowercase().as_str() {
            "tanh" => Some(Activation::Tanh),
            "relu" => Some(Activation::Relu),
            "identity" | "linear" => Some(Activation::Identity),
            _ => None,
        }
    }
}

/// Fully connected layer `a = act(W x + b)`; `weights` is row-major `outputs x inputs`.
#[derive(Debug, Clone, PartialEq)]
pub struct Dense {
    pub inputs: usize,
    pub outputs: usize,
    pub activation: Activation,
    pub weights: Vec<f64>,
    pub bias: Vec<f64>,
}

impl Dense {
    /// Weights ~ U(-sqrt(3/fan_in), sqrt(3/fan_in)), zero bias.
    pub fn init<R: Rng>(inputs: usize, outputs: usize, activation: Activation, rng: &mut R) -> Dense {
        let limit = (3.0 / inputs.max(1) as f64).sqrt();
        let weights = (0..inputs * outputs)
            .map(|_| rng.gen_range(-limit..=limit))
            .collect();
        Dense {
            inputs,
            outputs,
            activation,
            weights,
            bias: vec![0.0; outputs],
        }
    }

    pub fn param_count(&self) -> usize {
        self.weights.len() + self.bias.len()
    }

    pub fn forward(&self, x: &Matrix) -> Matrix {
        debug_assert_eq!(x.cols(), self.inputs);
        let mut out = Matrix::zeros(x.rows(), self.outputs);
        for (i, xi) in x.iter_rows().enumerate() {
            let oi = out.row_mut(i);
            for (o, slot) in oi.iter_mut().enumerate() {
                let w = &self.weights[o * self.inputs..(o + 1) * self.inputs];
                let z = self.bias[o] + w.iter().zip(xi).map(|(a, b)| a * b).sum::<f64>();
                *slot = self.activation.apply(z);
            }
        }
        out
    }

    /// Backpropagates `d_out` (gradient w.r.t. the activated output `out`) through
    /// the layer. Parameter gradients are accumulated into `grad` laid out as
    /// `[weights, bias]`; returns the gradient w.r.t. `x`.
    pub fn backward(&self, x: &Matrix, out: &Matrix, d_out: &Matrix, grad: &mut [f64]) -> Matrix {
        let (gw, gb) = grad.split_at_mut(self.weights.len());
        let mut dx = Matrix::zeros(x.rows(), self.inputs);
        let mut dz = vec![0.0; self.outputs];
        for i in 0..x.rows() {
            let xi = x.row(i);
            let ai = out.row(i);
            for (o, dzo) in dz.iter_mut().enumerate() {
                *dzo = d_out.get(i, o) * self.activation.derivative_from_output(ai[o]);
            }
            let dxi = dx.row_mut(i);
            for (o, &d) in dz.iter().enumerate() {
                if d == 0.0 {
                    continue;
                }
                gb[o] += d;
                let row = o * self.inputs..(o + 1) * self.inputs;
                for ((g, &xk), (dxk, &w)) in gw[row.clone()]
                    .iter_mut()
                    .zip(xi)
                    .zip(dxi.iter_mut().zip(&self.weights[row]))
                {
                    *g += d * xk;
                    *dxk += d * w;
                }
            }
        }
        dx
    }

    pub fn write_params(&self, dst: &mut [f64]) {
        let (w, b) = dst.split_at_mut(self.weights.len());
        w.copy_from_slice(&self.weights);
        b.copy_from_slice(&self.bias);
    }

    pub fn read_params(&mut self, src: &[f64]) {
        let (w, b) = src.split_at(self.weights.len());
        self.weights.copy_from_slice(w);
        self.bias.copy_from_slice(b);
    }
}

/// Sequence of dense layers. An empty stack is the identity map.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Stack {
    pub layers: Vec<Dense>,
}

impl Stack {
    pub fn new(layers: Vec<Dense>) -> Stack {
        Stack { layers }
    }

    pub fn param_count(&self) -> usize {
        self.layers.iter().map(Dense::param_count).sum()
    }

    pub fn output_width(&self, input_width: usize) -> usize {
        self.layers.last().map_or(input_width, |l| l.outputs)
    }

    pub fn forward(&self, x: &Matrix) -> Matrix {
        let mut cur = x.clone();
        for l in &self.layers {
            cur = l.forward(&cur);
        }
        cur
    }

    /// Forward pass keeping every intermediate: `acts[0] = x`, `acts[k+1]` = layer k output.
    pub fn forward_cached(&self, x: &Matrix) -> Vec<Matrix> {
        let mut acts = Vec::with_capacity(self.layers.len() + 1);
        acts.push(x.clone());
        for l in &self.layers {
            let next = l.forward(acts.last().unwrap());
            acts.push(next);
        }
        acts
    }

    pub fn backward(&self, acts: &[Matrix], d_out: Matrix, grad: &mut [f64]) -> Matrix {
        let mut offsets = Vec::with_capacity(self.layers.len());
        let mut off = 0;
        for l in &self.layers {
            offsets.push(off);
            off += l.param_count();
        }
        let mut d = d_out;
        for (k, l) in self.layers.iter().enumerate().rev() {
            let g = &mut grad[offsets[k]..offsets[k] + l.param_count()];
            d = l.backward(&acts[k], &acts[k + 1], &d, g);
        }
        d
    }

    pub fn write_params(&self, dst: &mut [f64]) {
        let mut off = 0;
        for l in &self.layers {
            l.write_params(&mut dst[off..off + l.param_count()]);
            off += l.param_count();
        }
    }

    pub fn read_params(&mut self, src: &[f64]) {
        let mut off = 0;
        for l in &mut self.layers {
            let n = l.param_count();
            l.read_params(&src[off..off + n]);
            off += n;
        }
    }
}
