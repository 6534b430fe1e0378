use crate::error::{Error, Result};
use crate::linalg::{dot, sym_eigen_with, DenseMatrix, SymEigen, Tolerances};

/// Lower-triangular Cholesky factor `L` with `m = L Lᵀ`, or `None` when `m`
/// is not numerically positive definite.
pub fn cholesky(m: &DenseMatrix) -> Option<DenseMatrix> {
    let n = m.rows();
    if !m.is_square() {
        return None;
    }
    let mut l = DenseMatrix::zeros(n, n);
    for j in 0..n {
        let mut d = m[(j, j)] - dot(&l.row(j)[..j], &l.row(j)[..j]);
        if !d.is_finite() || d <= 0.0 {
            return None;
        }
        d = d.sqrt();
        l[(j, j)] = d;
        for i in (j + 1)..n {
            let s = m[(i, j)] - dot(&l.row(i)[..j], &l.row(j)[..j]);
            l[(i, j)] = s / d;
        }
    }
    Some(l)
}

#[derive(Debug, Clone)]
enum Factor {
    Cholesky(DenseMatrix),
    /// Eigendecomposition of `K + δI`, used when Cholesky breaks down.
    Eigen(SymEigen),
}

/// Factorization of `K + δI` that can be reused across right-hand sides.
#[derive(Debug, Clone)]
pub struct RegularizedSolver {
    n: usize,
    factor: Factor,
}

impl RegularizedSolver {
    pub fn new(k: &DenseMatrix, delta: f64) -> Result<Self> {
        Self::with_tolerances(k, delta, &Tolerances::default())
    }

    pub fn with_tolerances(k: &DenseMatrix, delta: f64, tol: &Tolerances) -> Result<Self> {
        if !delta.is_finite() || delta < 0.0 {
            return Err(Error::Input(format!(
                "regularization must be non-negative and finite, got {delta}"
            )));
        }
        k.require_square_symmetric(tol.symmetry)?;
        let n = k.rows();
        let shifted = k.add_diagonal(delta);
        if let Some(l) = cholesky(&shifted) {
            return Ok(Self {
                n,
                factor: Factor::Cholesky(l),
            });
        }
        log::debug!("cholesky of K + {delta}I failed, falling back to eigendecomposition");
        let eig = sym_eigen_with(&shifted, tol)?;
        let scale = eig.values.iter().fold(0.0_f64, |a, v| a.max(v.abs()));
        let smallest = eig.values.iter().fold(f64::INFINITY, |a, v| a.min(v.abs()));
        if n > 0 && (scale == 0.0 || smallest <= tol.singularity * scale) {
            return Err(Error::Numeric(format!(
                "K + {delta}I is singular (smallest |eigenvalue| {smallest:e})"
            )));
        }
        Ok(Self {
            n,
            factor: Factor::Eigen(eig),
        })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Solves `(K + δI) c = y`.
    pub fn solve(&self, y: &[f64]) -> Result<Vec<f64>> {
        if y.len() != self.n {
            return Err(Error::Input(format!(
                "right-hand side has length {}, system has {}",
                y.len(),
                self.n
            )));
        }
        Ok(match &self.factor {
            Factor::Cholesky(l) => {
                let mut z = vec![0.0; self.n];
                for i in 0..self.n {
                    z[i] = (y[i] - dot(&l.row(i)[..i], &z[..i])) / l[(i, i)];
                }
                let mut c = vec![0.0; self.n];
                for i in (0..self.n).rev() {
                    let mut s = z[i];
                    for k in (i + 1)..self.n {
                        s -= l[(k, i)] * c[k];
                    }
                    c[i] = s / l[(i, i)];
                }
                c
            }
            Factor::Eigen(eig) => {
                let g = &eig.vectors;
                let coords: Vec<f64> = (0..self.n)
                    .map(|k| (0..self.n).map(|i| g[(i, k)] * y[i]).sum::<f64>() / eig.values[k])
                    .collect();
                (0..self.n).map(|i| dot(g.row(i), &coords)).collect()
            }
        })
    }
}

/// Solves `(K + δI) c = y`.
pub fn regularized_solve(k: &DenseMatrix, y: &[f64], delta: f64) -> Result<Vec<f64>> {
    RegularizedSolver::new(k, delta)?.solve(y)
}
