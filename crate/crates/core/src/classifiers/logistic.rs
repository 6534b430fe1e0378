//! Binary logistic regression fit by Newton's method on the ridge-penalized
//! log-likelihood. Coefficient vectors are laid out `[intercept, w₁, …, w_p]`
//! and the intercept is not penalized.

use crate::classifiers::{ClassifierConfig, FeatureEncoder, Prediction};
use crate::datasets::LabeledTable;
use crate::error::{Error, Result};
use crate::linalg::{dot, DenseMatrix, RegularizedSolver};

pub const MAX_ITERATIONS: usize = 100;
pub const GRADIENT_TOLERANCE: f64 = 1e-8;
const MAX_HALVINGS: usize = 60;

pub fn sigmoid(t: f64) -> f64 {
    if t >= 0.0 {
        1.0 / (1.0 + (-t).exp())
    } else {
        let e = t.exp();
        e / (1.0 + e)
    }
}

fn linear(beta: &[f64], x: &[f64]) -> f64 {
    beta[0] + dot(&beta[1..], x)
}

/// `σ(β₀ + w·x)`.
pub fn logistic_predict(beta: &[f64], x: &[f64]) -> f64 {
    sigmoid(linear(beta, x))
}

/// `Σ [y η − log(1 + e^η)] − ½ λ ‖w‖²` with `η = β₀ + w·x`.
pub fn penalized_log_likelihood(x: &[Vec<f64>], y: &[f64], beta: &[f64], ridge: f64) -> f64 {
    let ll: f64 = x
        .iter()
        .zip(y)
        .map(|(xi, &yi)| {
            let eta = linear(beta, xi);
            // log(1 + e^η) without overflow
            let softplus = if eta > 0.0 { eta + (-eta).exp().ln_1p() } else { eta.exp().ln_1p() };
            yi * eta - softplus
        })
        .sum();
    ll - 0.5 * ridge * dot(&beta[1..], &beta[1..])
}

/// Gradient of [`penalized_log_likelihood`] with respect to `β`.
pub fn gradient(x: &[Vec<f64>], y: &[f64], beta: &[f64], ridge: f64) -> Vec<f64> {
    let mut g = vec![0.0; beta.len()];
    for (xi, &yi) in x.iter().zip(y) {
        let r = yi - logistic_predict(beta, xi);
        g[0] += r;
        for (gk, xk) in g[1..].iter_mut().zip(xi) {
            *gk += r * xk;
        }
    }
    for (gk, bk) in g[1..].iter_mut().zip(&beta[1..]) {
        *gk -= ridge * bk;
    }
    g
}

#[derive(Debug, Clone, PartialEq)]
pub struct LogisticFit {
    pub beta: Vec<f64>,
    pub iterations: usize,
    /// The fitted model classifies every training row correctly, i.e. the
    /// classes are linearly separable and the unpenalized maximum-likelihood
    /// estimate does not exist; `beta` is the ridge-regularized solution.
    pub separated: bool,
}

/// Newton iterations with step halving. `y` holds 0/1 targets.
pub fn logistic_fit(x: &[Vec<f64>], y: &[f64], ridge: f64) -> Result<LogisticFit> {
    logistic_fit_with(x, y, ridge, MAX_ITERATIONS, GRADIENT_TOLERANCE)
}

pub fn logistic_fit_with(
    x: &[Vec<f64>],
    y: &[f64],
    ridge: f64,
    max_iterations: usize,
    tolerance: f64,
) -> Result<LogisticFit> {
    let n = x.len();
    if n == 0 || y.len() != n {
        return Err(Error::Input("logistic regression needs matching non-empty rows and targets".into()));
    }
    let p = x[0].len();
    if x.iter().any(|r| r.len() != p) {
        return Err(Error::Input("ragged feature rows".into()));
    }
    if y.iter().any(|&v| v != 0.0 && v != 1.0) {
        return Err(Error::Input("logistic targets must be 0 or 1".into()));
    }
    if !(ridge >= 0.0 && ridge.is_finite()) {
        return Err(Error::Config(format!("logistic ridge must be non-negative, got {ridge}")));
    }

    let mut beta = vec![0.0; p + 1];
    let mut objective = penalized_log_likelihood(x, y, &beta, ridge);
    let mut iterations = 0;
    loop {
        let g = gradient(x, y, &beta, ridge);
        let g_inf = g.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
        if g_inf < tolerance {
            break;
        }
        if iterations == max_iterations {
            return Err(Error::Convergence {
                iterations,
                message: format!("Newton iterations stopped with gradient norm {g_inf:e}"),
                last_iterate: beta,
            });
        }
        iterations += 1;

        // Negative Hessian: Xᵀ W X + λ diag(0, 1, …, 1).
        let mut h = DenseMatrix::zeros(p + 1, p + 1);
        for xi in x {
            let pi = logistic_predict(&beta, xi);
            let w = pi * (1.0 - pi);
            for a in 0..=p {
                let xa = if a == 0 { 1.0 } else { xi[a - 1] };
                for b in a..=p {
                    let xb = if b == 0 { 1.0 } else { xi[b - 1] };
                    h[(a, b)] += w * xa * xb;
                }
            }
        }
        for a in 0..=p {
            if a > 0 {
                h[(a, a)] += ridge;
            }
            for b in 0..a {
                h[(a, b)] = h[(b, a)];
            }
        }
        let direction = match RegularizedSolver::new(&h, 0.0).and_then(|s| s.solve(&g)) {
            Ok(d) => d,
            // Flat curvature (e.g. no ridge under separation): fall back to
            // a gradient step.
            Err(_) => g.clone(),
        };

        let mut step = 1.0;
        let mut accepted = false;
        for _ in 0..MAX_HALVINGS {
            let candidate: Vec<f64> = beta.iter().zip(&direction).map(|(b, d)| b + step * d).collect();
            let value = penalized_log_likelihood(x, y, &candidate, ridge);
            if value >= objective {
                beta = candidate;
                objective = value;
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if !accepted {
            // No ascent possible at floating-point resolution.
            break;
        }
    }

    let separated = x
        .iter()
        .zip(y)
        .all(|(xi, &yi)| (linear(&beta, xi) > 0.0) == (yi == 1.0) && linear(&beta, xi) != 0.0);
    if separated {
        log::debug!("logistic regression: training classes are linearly separable; returning the ridge solution");
    }
    Ok(LogisticFit {
        beta,
        iterations,
        separated,
    })
}

/// Binary logistic model over encoded rows; the second class is `1`.
#[derive(Debug, Clone)]
pub struct LogisticModel {
    pub fit: LogisticFit,
}

impl LogisticModel {
    pub(crate) fn fit_table(config: &ClassifierConfig, data: &LabeledTable, enc: &FeatureEncoder) -> Result<Self> {
        if data.n_classes() != 2 {
            return Err(Error::Config(format!(
                "logistic regression is binary; the table has {} classes",
                data.n_classes()
            )));
        }
        let x: Vec<Vec<f64>> = data.rows.iter().map(|r| enc.encode(r)).collect();
        let y: Vec<f64> = data.labels.iter().map(|&l| f64::from(u8::from(l == 1))).collect();
        Ok(Self {
            fit: logistic_fit(&x, &y, config.logistic_ridge)?,
        })
    }

    pub fn predict(&self, x: &[f64]) -> Prediction {
        let p = logistic_predict(&self.fit.beta, x);
        let mut pred = Prediction::from_scores(vec![1.0 - p, p]);
        pred.label = usize::from(linear(&self.fit.beta, x) > 0.0);
        pred
    }
}
