use nalgebra::DMatrix;

use crate::error::Result;
use crate::linalg::{DenseMatrix, Tolerances};

/// Eigenpairs of a symmetric matrix, eigenvalues in descending order.
/// Column `k` of `vectors` is the unit eigenvector for `values[k]`.
#[derive(Debug, Clone)]
pub struct SymEigen {
    pub values: Vec<f64>,
    pub vectors: DenseMatrix,
}

impl SymEigen {
    /// `Γ diag(f(λ)) Γᵀ`.
    pub fn reconstruct_with(&self, f: impl Fn(f64) -> f64) -> DenseMatrix {
        let n = self.vectors.rows();
        let scaled: Vec<f64> = self.values.iter().map(|&l| f(l)).collect();
        let mut out = DenseMatrix::zeros(n, n);
        for i in 0..n {
            let gi = self.vectors.row(i);
            for j in i..n {
                let gj = self.vectors.row(j);
                let v: f64 = gi
                    .iter()
                    .zip(gj)
                    .zip(&scaled)
                    .map(|((a, b), l)| a * b * l)
                    .sum();
                out[(i, j)] = v;
                out[(j, i)] = v;
            }
        }
        out
    }

    pub fn reconstruct(&self) -> DenseMatrix {
        self.reconstruct_with(|l| l)
    }
}

pub fn sym_eigen(m: &DenseMatrix) -> Result<SymEigen> {
    sym_eigen_with(m, &Tolerances::default())
}

pub fn sym_eigen_with(m: &DenseMatrix, tol: &Tolerances) -> Result<SymEigen> {
    m.require_square_symmetric(tol.symmetry)?;
    let n = m.rows();
    if n == 0 {
        return Ok(SymEigen {
            values: Vec::new(),
            vectors: DenseMatrix::zeros(0, 0),
        });
    }
    // Feed the exactly symmetric part so the solver sees a consistent matrix.
    let sym = m.symmetrized();
    let eig = DMatrix::from_row_slice(n, n, sym.as_slice()).symmetric_eigen();

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        eig.eigenvalues[b]
            .partial_cmp(&eig.eigenvalues[a])
            .expect("eigenvalues are finite")
    });
    let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let vectors = DenseMatrix::from_fn(n, n, |i, j| eig.eigenvectors[(i, order[j])]);
    Ok(SymEigen { values, vectors })
}

/// Projects a symmetric matrix onto the PSD cone by clipping negative
/// eigenvalues to zero.
pub fn psd_repair(m: &DenseMatrix) -> Result<DenseMatrix> {
    psd_repair_with(m, &Tolerances::default())
}

pub fn psd_repair_with(m: &DenseMatrix, tol: &Tolerances) -> Result<DenseMatrix> {
    let eig = sym_eigen_with(m, tol)?;
    Ok(eig.reconstruct_with(|l| l.max(0.0)))
}
