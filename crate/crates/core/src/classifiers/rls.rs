//! Kernel regularized least squares: `c = (K + δI)⁻¹ y`, `ŷ = k̂·c`.

use crate::classifiers::{ClassifierConfig, FeatureEncoder, Prediction};
use crate::datasets::LabeledTable;
use crate::error::{Error, Result};
use crate::linalg::{dot, kernel_eval, psd_repair, DenseMatrix, KernelSpec, RegularizedSolver};

/// Coefficients `c = (K + δI)⁻¹ y`. `K` should be PSD; see [`psd_repair`].
pub fn rls_fit(k: &DenseMatrix, y: &[f64], delta: f64) -> Result<Vec<f64>> {
    check_delta(delta)?;
    RegularizedSolver::new(k, delta)?.solve(y)
}

/// `k̂·c` for the kernel values `k̂` between a query and the training rows.
pub fn rls_predict(c: &[f64], k_hat: &[f64]) -> Result<f64> {
    if c.len() != k_hat.len() {
        return Err(Error::Input(format!(
            "kernel row has length {}, model has {} coefficients",
            k_hat.len(),
            c.len()
        )));
    }
    Ok(dot(k_hat, c))
}

fn check_delta(delta: f64) -> Result<()> {
    if delta > 0.0 && delta.is_finite() {
        Ok(())
    } else {
        Err(Error::Config(format!("RLS delta must be positive, got {delta}")))
    }
}

/// Gram matrix of `kernel` over `rows`, or the rows themselves for a
/// precomputed kernel. Kernels that are not PSD by construction are
/// repaired.
pub(crate) fn gram(kernel: &KernelSpec, rows: &[Vec<f64>]) -> Result<DenseMatrix> {
    let n = rows.len();
    let k = match kernel {
        KernelSpec::Precomputed => {
            if rows.iter().any(|r| r.len() != n) {
                return Err(Error::Config(format!(
                    "a precomputed kernel needs an {n}x{n} feature block, one column per training row"
                )));
            }
            DenseMatrix::from_rows(rows)?.symmetrized()
        }
        _ => {
            let mut k = DenseMatrix::zeros(n, n);
            for i in 0..n {
                for j in i..n {
                    let v = kernel_eval(kernel, &rows[i], &rows[j])?;
                    k[(i, j)] = v;
                    k[(j, i)] = v;
                }
            }
            k
        }
    };
    match kernel {
        KernelSpec::Tanh { .. } | KernelSpec::Precomputed => psd_repair(&k),
        _ => Ok(k),
    }
}

pub(crate) fn kernel_row(kernel: &KernelSpec, train: &[Vec<f64>], x: &[f64]) -> Vec<f64> {
    match kernel {
        KernelSpec::Precomputed => x.to_vec(),
        _ => train
            .iter()
            .map(|t| kernel_eval(kernel, t, x).unwrap_or(0.0))
            .collect(),
    }
}

/// One-vs-rest RLS over encoded rows, 0/1 targets per class.
#[derive(Debug, Clone)]
pub struct RlsModel {
    kernel: KernelSpec,
    train: Vec<Vec<f64>>,
    /// One coefficient vector per class.
    pub coefficients: Vec<Vec<f64>>,
}

impl RlsModel {
    pub(crate) fn fit_table(config: &ClassifierConfig, data: &LabeledTable, enc: &FeatureEncoder) -> Result<Self> {
        let train: Vec<Vec<f64>> = data.rows.iter().map(|r| enc.encode(r)).collect();
        let k = gram(&config.kernel, &train)?;
        check_delta(config.delta)?;
        let solver = RegularizedSolver::new(&k, config.delta)?;
        let coefficients = (0..data.n_classes())
            .map(|c| {
                let y: Vec<f64> = data.labels.iter().map(|&l| f64::from(u8::from(l == c))).collect();
                solver.solve(&y)
            })
            .collect::<Result<_>>()?;
        Ok(Self {
            kernel: config.kernel,
            train,
            coefficients,
        })
    }

    /// Raw regression outputs, one per class.
    pub fn outputs(&self, x: &[f64]) -> Vec<f64> {
        let k_hat = kernel_row(&self.kernel, &self.train, x);
        self.coefficients.iter().map(|c| dot(&k_hat, c)).collect()
    }

    /// Outputs clipped at zero and normalized; a softmax when no output is
    /// positive.
    pub fn predict(&self, x: &[f64]) -> Prediction {
        let out = self.outputs(x);
        let clipped: Vec<f64> = out.iter().map(|v| v.max(0.0)).collect();
        let total: f64 = clipped.iter().sum();
        let scores = if total > 0.0 {
            clipped.into_iter().map(|v| v / total).collect()
        } else {
            let max = out.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            let e: Vec<f64> = out.iter().map(|v| (v - max).exp()).collect();
            let s: f64 = e.iter().sum();
            e.into_iter().map(|v| v / s).collect()
        };
        Prediction::from_scores(scores)
    }
}
