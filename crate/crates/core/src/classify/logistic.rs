//! L2-regularized logistic regression trained with L-BFGS.

use super::ModelParams;
use crate::error::Result;
use crate::matrix::Matrix;
use crate::optimize::{lbfgs_minimize, LbfgsParams};
use crate::scalar::Scalar;

fn sigmoid(z: f64) -> f64 {
    if z >= 0.0 {
        1.0 / (1.0 + (-z).exp())
    } else {
        let e = z.exp();
        e / (1.0 + e)
    }
}

/// Mean binary cross-entropy over rows with 0.5·l2·‖w‖² (bias unpenalized).
/// Parameters are packed `[w…, b]`. Exposed for gradient-check tests.
pub(crate) fn loss_closure<'a, S: Scalar>(
    x: &'a Matrix<S>,
    y: &'a [f64],
    l2: f64,
) -> impl Fn(&[S]) -> (S, Vec<S>) + 'a {
    move |params: &[S]| {
        let d = x.n_cols();
        let n = x.n_rows() as f64;
        let w: Vec<f64> = params[..d].iter().map(|v| v.to_f64().unwrap()).collect();
        let b = params[d].to_f64().unwrap();
        let mut loss = 0.0;
        let mut grad = vec![0.0; d + 1];
        for (i, yi) in y.iter().enumerate() {
            let row = x.row(i);
            let z: f64 = row
                .iter()
                .zip(&w)
                .map(|(xi, wi)| xi.to_f64().unwrap() * wi)
                .sum::<f64>()
                + b;
            let target = if *yi > 0.0 { 1.0 } else { 0.0 };
            let p = sigmoid(z);
            let eps = 1e-12;
            loss -= target * (p + eps).ln() + (1.0 - target) * (1.0 - p + eps).ln();
            let delta = p - target;
            for (g, xi) in grad[..d].iter_mut().zip(row) {
                *g += delta * xi.to_f64().unwrap();
            }
            grad[d] += delta;
        }
        loss /= n;
        for g in grad.iter_mut() {
            *g /= n;
        }
        for (g, wi) in grad[..d].iter_mut().zip(&w) {
            *g += l2 * wi;
        }
        loss += 0.5 * l2 * w.iter().map(|v| v * v).sum::<f64>();
        (
            S::from_f64_lit(loss),
            grad.into_iter().map(S::from_f64_lit).collect(),
        )
    }
}

pub(super) fn train<S: Scalar>(
    x: &Matrix<S>,
    y: &[f64],
    l2: f64,
    tol: f64,
    max_iter: usize,
) -> Result<ModelParams<S>> {
    let d = x.n_cols();
    let params = LbfgsParams {
        tol,
        max_iter,
        ..Default::default()
    };
    let result = lbfgs_minimize(loss_closure(x, y, l2), vec![S::zero(); d + 1], &params)?;
    let mut weights = result.x;
    let bias = weights.pop().expect("bias slot");
    Ok(ModelParams::Linear { weights, bias })
}

/// Probability of the positive class per row.
pub(super) fn scores<S: Scalar>(weights: &[S], bias: S, x: &Matrix<S>) -> Vec<S> {
    (0..x.n_rows())
        .map(|i| {
            let z = crate::matrix::dot(x.row(i), weights) + bias;
            S::from_f64_lit(sigmoid(z.to_f64().unwrap()))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::optimize::gradient_check;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn logistic_gradient_matches_finite_differences() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let rows: Vec<Vec<f64>> = (0..12)
            .map(|_| (0..3).map(|_| rng.gen::<f64>() * 2.0 - 1.0).collect())
            .collect();
        let y: Vec<f64> = (0..12).map(|i| if i % 2 == 0 { 1.0 } else { -1.0 }).collect();
        let x = Matrix::from_rows(rows);
        let f = loss_closure(&x, &y, 0.01);
        for _ in 0..10 {
            let point: Vec<f64> = (0..4).map(|_| rng.gen::<f64>() - 0.5).collect();
            let err = gradient_check(&f, &point, 1e-6);
            assert!(err < 1e-5, "gradient error {err}");
        }
    }
}
