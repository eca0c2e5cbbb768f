//! Limited-memory BFGS with Armijo backtracking, for smooth unconstrained minimization.

use std::collections::VecDeque;

#[derive(Debug, Clone, Copy)]
pub struct LbfgsOptions {
    pub memory: usize,
    pub max_iter: usize,
    pub grad_tol: f64,
    pub f_rel_tol: f64,
}

impl Default for LbfgsOptions {
    fn default() -> Self {
        LbfgsOptions {
            memory: 8,
            max_iter: 200,
            grad_tol: 1e-6,
            f_rel_tol: 1e-12,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Minimum {
    pub x: Vec<f64>,
    pub f: f64,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Minimizes `f`, which returns `(value, gradient)`. The flag passed to `f`
/// says whether the gradient is needed; when it is false the returned
/// gradient is ignored. A non-finite value marks an infeasible point; the line
/// search backs away from it.
pub fn minimize<F>(mut f: F, x0: Vec<f64>, opts: LbfgsOptions) -> Option<Minimum>
where
    F: FnMut(&[f64], bool) -> (f64, Vec<f64>),
{
    let mut x = x0;
    let (mut fx, mut g) = f(&x, true);
    if !fx.is_finite() {
        return None;
    }
    let mut hist: VecDeque<(Vec<f64>, Vec<f64>, f64)> = VecDeque::with_capacity(opts.memory);
    for _ in 0..opts.max_iter {
        let gnorm = dot(&g, &g).sqrt();
        if gnorm < opts.grad_tol {
            break;
        }
        // two-loop recursion
        let mut q = g.clone();
        let mut alphas = Vec::with_capacity(hist.len());
        for (s, y, rho) in hist.iter().rev() {
            let a = rho * dot(s, &q);
            for (qi, yi) in q.iter_mut().zip(y) {
                *qi -= a * yi;
            }
            alphas.push(a);
        }
        if let Some((s, y, _)) = hist.back() {
            let gamma = dot(s, y) / dot(y, y);
            for qi in q.iter_mut() {
                *qi *= gamma;
            }
        } else {
            let scale = 1.0 / gnorm.max(1.0);
            for qi in q.iter_mut() {
                *qi *= scale;
            }
        }
        for ((s, y, rho), a) in hist.iter().zip(alphas.iter().rev()) {
            let b = rho * dot(y, &q);
            for (qi, si) in q.iter_mut().zip(s) {
                *qi += (a - b) * si;
            }
        }
        let mut dir: Vec<f64> = q.iter().map(|v| -v).collect();
        let mut slope = dot(&dir, &g);
        if !(slope < 0.0) {
            // not a descent direction: restart from steepest descent
            hist.clear();
            dir = g.iter().map(|v| -v / gnorm.max(1.0)).collect();
            slope = dot(&dir, &g);
        }

        let mut step = 1.0;
        let mut accepted = None;
        for _ in 0..40 {
            let xn: Vec<f64> = x.iter().zip(&dir).map(|(xi, di)| xi + step * di).collect();
            // the full step is usually taken, so its gradient comes along
            let full = step == 1.0;
            let (fn_, gn) = f(&xn, full);
            if fn_.is_finite() && fn_ <= fx + 1e-4 * step * slope {
                let gn = if full { gn } else { f(&xn, true).1 };
                accepted = Some((xn, fn_, gn));
                break;
            }
            step *= 0.5;
        }
        let Some((xn, fn_, gn)) = accepted else {
            break;
        };
        let s: Vec<f64> = xn.iter().zip(&x).map(|(a, b)| a - b).collect();
        let y: Vec<f64> = gn.iter().zip(&g).map(|(a, b)| a - b).collect();
        let sy = dot(&s, &y);
        if sy > 1e-12 {
            if hist.len() == opts.memory {
                hist.pop_front();
            }
            hist.push_back((s, y, 1.0 / sy));
        }
        let converged = (fx - fn_).abs() <= opts.f_rel_tol * fx.abs().max(1.0);
        x = xn;
        fx = fn_;
        g = gn;
        if converged {
            break;
        }
    }
    Some(Minimum { x, f: fx })
}
