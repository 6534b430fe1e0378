//! Independent reference implementations used as test oracles.

use crate::linalg::DenseMatrix;

/// Gauss-Jordan inverse with partial pivoting; independent of the
/// factorizations under test.
pub fn brute_force_inverse(m: &DenseMatrix) -> DenseMatrix {
    let n = m.rows();
    let mut a = m.clone();
    let mut inv = DenseMatrix::identity(n);
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&x, &y| a[(x, col)].abs().partial_cmp(&a[(y, col)].abs()).unwrap())
            .unwrap();
        for j in 0..n {
            let (t1, t2) = (a[(col, j)], inv[(col, j)]);
            a[(col, j)] = a[(pivot, j)];
            inv[(col, j)] = inv[(pivot, j)];
            a[(pivot, j)] = t1;
            inv[(pivot, j)] = t2;
        }
        let p = a[(col, col)];
        for j in 0..n {
            a[(col, j)] /= p;
            inv[(col, j)] /= p;
        }
        for r in 0..n {
            if r != col {
                let f = a[(r, col)];
                for j in 0..n {
                    a[(r, j)] -= f * a[(col, j)];
                    inv[(r, j)] -= f * inv[(col, j)];
                }
            }
        }
    }
    inv
}


/// SVM dual solved by projected gradient ascent with an exact projection
/// onto `{0 ≤ α ≤ C, Σ α_i y_i = 0}` (bisection on the multiplier).
pub fn projected_gradient_svm(k: &DenseMatrix, y: &[f64], c: f64) -> Vec<f64> {
    let n = y.len();
    let q = DenseMatrix::from_fn(n, n, |i, j| y[i] * y[j] * k[(i, j)]);
    let lipschitz = q.frobenius_norm().max(1e-12);
    let project = |v: &[f64]| -> Vec<f64> {
        let at = |nu: f64| -> Vec<f64> { v.iter().zip(y).map(|(vi, yi)| (vi - nu * yi).clamp(0.0, c)).collect() };
        let balance = |a: &[f64]| -> f64 { a.iter().zip(y).map(|(ai, yi)| ai * yi).sum() };
        let bound = v.iter().fold(0.0_f64, |m, x| m.max(x.abs())) + c + 1.0;
        let (mut lo, mut hi) = (-bound, bound);
        for _ in 0..80 {
            let mid = 0.5 * (lo + hi);
            if balance(&at(mid)) > 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        at(0.5 * (lo + hi))
    };
    let mut alpha = vec![0.0; n];
    for _ in 0..4_000 {
        let qa = q.matvec(&alpha).unwrap();
        let step: Vec<f64> = alpha
            .iter()
            .zip(&qa)
            .map(|(a, g)| a + (1.0 - g) / lipschitz)
            .collect();
        alpha = project(&step);
    }
    alpha
}
