//! Soft-margin kernel SVM trained on the dual by sequential minimal
//! optimization with maximal-violating-pair working sets.
//!
//! Dual: maximize `Σα_i − ½ΣΣ α_i α_j y_i y_j K_ij` subject to
//! `0 ≤ α_i ≤ C` and `Σ α_i y_i = 0`. Decision value
//! `f(x) = Σ α_i y_i K(x_i, x) − b`.

use crate::classifiers::rls::{gram, kernel_row};
use crate::classifiers::{ClassifierConfig, FeatureEncoder, Prediction};
use crate::datasets::LabeledTable;
use crate::error::{Error, Result};
use crate::linalg::{dot, DenseMatrix, KernelSpec};

pub const KKT_TOLERANCE: f64 = 1e-3;
pub const MAX_ITERATIONS: usize = 100_000;

/// Curvature floor for pairs whose kernel second difference vanishes.
const TAU: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct SvmSolution {
    pub alpha: Vec<f64>,
    pub b: f64,
    pub iterations: usize,
}

impl SvmSolution {
    /// `Σ α_i y_i k_i − b` for kernel values `k` against the training rows.
    pub fn decision_value(&self, y: &[f64], k: &[f64]) -> f64 {
        self.alpha
            .iter()
            .zip(y)
            .zip(k)
            .map(|((a, yi), ki)| a * yi * ki)
            .sum::<f64>()
            - self.b
    }
}

/// Dual objective `Σα − ½ αᵀQα` with `Q_ij = y_i y_j K_ij`.
pub fn dual_objective(k: &DenseMatrix, y: &[f64], alpha: &[f64]) -> f64 {
    let n = alpha.len();
    let mut quad = 0.0;
    for i in 0..n {
        for j in 0..n {
            quad += alpha[i] * alpha[j] * y[i] * y[j] * k[(i, j)];
        }
    }
    alpha.iter().sum::<f64>() - 0.5 * quad
}

pub fn svm_fit(k: &DenseMatrix, y: &[f64], c: f64) -> Result<SvmSolution> {
    svm_fit_with(k, y, c, KKT_TOLERANCE, MAX_ITERATIONS)
}

pub fn svm_fit_with(k: &DenseMatrix, y: &[f64], c: f64, tolerance: f64, max_iterations: usize) -> Result<SvmSolution> {
    let n = y.len();
    if !k.is_square() || k.rows() != n {
        return Err(Error::Input(format!(
            "kernel is {}x{} but there are {n} labels",
            k.rows(),
            k.cols()
        )));
    }
    if !(c > 0.0 && c.is_finite()) {
        return Err(Error::Config(format!("SVM C must be positive, got {c}")));
    }
    if y.iter().any(|&v| v != 1.0 && v != -1.0) {
        return Err(Error::Input("SVM labels must be -1 or +1".into()));
    }
    if !(y.contains(&1.0) && y.contains(&-1.0)) {
        return Err(Error::Input("SVM needs both classes".into()));
    }

    let mut alpha = vec![0.0; n];
    // Gradient of ½αᵀQα − Σα.
    let mut grad = vec![-1.0; n];
    let in_up = |t: usize, a: &[f64]| (y[t] > 0.0 && a[t] < c) || (y[t] < 0.0 && a[t] > 0.0);
    let in_low = |t: usize, a: &[f64]| (y[t] > 0.0 && a[t] > 0.0) || (y[t] < 0.0 && a[t] < c);

    let mut iterations = 0;
    loop {
        let mut i = usize::MAX;
        let mut m_up = f64::NEG_INFINITY;
        let mut j = usize::MAX;
        let mut m_low = f64::INFINITY;
        for t in 0..n {
            let v = -y[t] * grad[t];
            if in_up(t, &alpha) && v > m_up {
                m_up = v;
                i = t;
            }
            if in_low(t, &alpha) && v < m_low {
                m_low = v;
                j = t;
            }
        }
        if i == usize::MAX || j == usize::MAX || m_up - m_low < tolerance {
            break;
        }
        if iterations == max_iterations {
            return Err(Error::Convergence {
                iterations,
                message: format!("SMO did not reach KKT tolerance {tolerance} (gap {})", m_up - m_low),
                last_iterate: alpha,
            });
        }
        iterations += 1;

        let curvature = (k[(i, i)] + k[(j, j)] - 2.0 * k[(i, j)]).max(TAU);
        let mut step = (m_up - m_low) / curvature;
        step = step.min(if y[i] > 0.0 { c - alpha[i] } else { alpha[i] });
        step = step.min(if y[j] > 0.0 { alpha[j] } else { c - alpha[j] });
        alpha[i] = (alpha[i] + y[i] * step).clamp(0.0, c);
        alpha[j] = (alpha[j] - y[j] * step).clamp(0.0, c);
        for (t, g) in grad.iter_mut().enumerate() {
            *g += y[t] * step * (k[(t, i)] - k[(t, j)]);
        }
    }

    // Bias from free vectors, else the midpoint of the feasible interval.
    let mut free_sum = 0.0;
    let mut free_count = 0;
    let mut lo = f64::NEG_INFINITY;
    let mut hi = f64::INFINITY;
    for t in 0..n {
        let yg = y[t] * grad[t];
        if alpha[t] > 0.0 && alpha[t] < c {
            free_sum += yg;
            free_count += 1;
        } else if in_up(t, &alpha) {
            hi = hi.min(yg);
        } else {
            lo = lo.max(yg);
        }
    }
    let b = if free_count > 0 {
        free_sum / f64::from(free_count)
    } else {
        match (lo.is_finite(), hi.is_finite()) {
            (true, true) => 0.5 * (lo + hi),
            (true, false) => lo,
            (false, true) => hi,
            (false, false) => 0.0,
        }
    };
    Ok(SvmSolution { alpha, b, iterations })
}

/// Binary SVM over encoded rows; the second class is `+1`.
#[derive(Debug, Clone)]
pub struct SvmModel {
    kernel: KernelSpec,
    train: Vec<Vec<f64>>,
    y: Vec<f64>,
    pub solution: SvmSolution,
}

impl SvmModel {
    pub(crate) fn fit_table(config: &ClassifierConfig, data: &LabeledTable, enc: &FeatureEncoder) -> Result<Self> {
        if data.n_classes() != 2 {
            return Err(Error::Config(format!(
                "svm is binary; the table has {} classes",
                data.n_classes()
            )));
        }
        let train: Vec<Vec<f64>> = data.rows.iter().map(|r| enc.encode(r)).collect();
        let y: Vec<f64> = data.labels.iter().map(|&l| if l == 1 { 1.0 } else { -1.0 }).collect();
        let k = gram(&config.kernel, &train)?;
        let solution = svm_fit(&k, &y, config.c)?;
        Ok(Self {
            kernel: config.kernel,
            train,
            y,
            solution,
        })
    }

    pub fn decision_value(&self, x: &[f64]) -> f64 {
        self.solution.decision_value(&self.y, &kernel_row(&self.kernel, &self.train, x))
    }

    /// Support vector count (`α > 0`).
    pub fn n_support(&self) -> usize {
        self.solution.alpha.iter().filter(|&&a| a > 0.0).count()
    }

    /// Scores are `(1 − σ(f), σ(f))` for the decision value `f`.
    pub fn predict(&self, x: &[f64]) -> Prediction {
        let f = self.decision_value(x);
        let p = 1.0 / (1.0 + (-f).exp());
        let mut pred = Prediction::from_scores(vec![1.0 - p, p]);
        // Label by the sign of f so rounding in σ cannot flip it.
        pred.label = usize::from(f > 0.0);
        pred
    }

    /// Primal weight vector `Σ α_i y_i x_i` (meaningful for the linear kernel).
    pub fn weights(&self) -> Vec<f64> {
        let dim = self.train.first().map_or(0, Vec::len);
        let mut w = vec![0.0; dim];
        for ((x, a), yi) in self.train.iter().zip(&self.solution.alpha).zip(&self.y) {
            for (wk, xk) in w.iter_mut().zip(x) {
                *wk += a * yi * xk;
            }
        }
        w
    }

    /// `w·x − b` from [`SvmModel::weights`]; equals the decision value for
    /// the linear kernel.
    pub fn primal_decision_value(&self, x: &[f64]) -> f64 {
        dot(&self.weights(), x) - self.solution.b
    }
}
