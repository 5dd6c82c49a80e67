//! RBF-kernel SVM backed by the SMO solver.

use super::ModelParams;
use crate::error::Result;
use crate::matrix::{squared_distance, Matrix};
use crate::optimize::{smo_solve, RbfKernel, SmoParams};
use crate::scalar::Scalar;

pub(super) fn train<S: Scalar>(
    x: &Matrix<S>,
    y: &[f64],
    gamma: f64,
    c: f64,
    tol: f64,
    max_passes: usize,
    cache_bytes: usize,
) -> Result<ModelParams<S>> {
    let labels: Vec<S> = y.iter().map(|v| S::from_f64_lit(*v)).collect();
    let params = SmoParams {
        c,
        tol,
        max_passes,
        cache_bytes,
    };
    let result = smo_solve(x, &labels, &RbfKernel { gamma }, &params)?;
    // Keep only support vectors; store alpha_i * y_i per vector.
    let mut sv_rows = Vec::with_capacity(result.support_indices.len());
    let mut alpha_y = Vec::with_capacity(result.support_indices.len());
    for &i in &result.support_indices {
        sv_rows.push(x.row(i).to_vec());
        alpha_y.push(result.alpha[i] * S::from_f64_lit(y[i]));
    }
    Ok(ModelParams::Svm {
        support_vectors: Matrix::from_rows(sv_rows),
        alpha_y,
        bias: result.bias,
        gamma,
    })
}

pub(super) fn decision_scores<S: Scalar>(
    support_vectors: &Matrix<S>,
    alpha_y: &[S],
    bias: S,
    gamma: f64,
    x: &Matrix<S>,
) -> Vec<S> {
    (0..x.n_rows())
        .map(|i| {
            let row = x.row(i);
            let mut f = bias;
            for (sv, ay) in support_vectors.iter_rows().zip(alpha_y) {
                let d2 = squared_distance(sv, row).to_f64().unwrap();
                f = f + *ay * S::from_f64_lit((-gamma * d2).exp());
            }
            f
        })
        .collect()
}
