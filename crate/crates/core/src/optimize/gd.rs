//! Seeded minibatch gradient descent for per-example objectives.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone)]
pub struct GdParams {
    pub learning_rate: f64,
    pub epochs: usize,
    pub batch_size: usize,
    pub seed: u64,
}

impl Default for GdParams {
    fn default() -> Self {
        Self {
            learning_rate: 1e-4,
            epochs: 4,
            batch_size: 16,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone)]
pub struct GdResult<S> {
    pub parameters: Vec<S>,
    /// Mean loss over the full dataset at the end of each epoch.
    pub epoch_losses: Vec<f64>,
}

/// Minimize a per-example objective by minibatch gradient descent.
///
/// `batch_eval(params, indices)` returns the mean loss and mean gradient
/// over the given example indices. Example order is reshuffled every epoch
/// from a ChaCha stream seeded with `params.seed`, so runs are reproducible.
pub fn minibatch_gd<S: Scalar>(
    n_examples: usize,
    x0: Vec<S>,
    batch_eval: impl Fn(&[S], &[usize]) -> (S, Vec<S>),
    params: &GdParams,
) -> Result<GdResult<S>> {
    if params.learning_rate < 0.0 {
        return Err(Error::Optimizer(format!(
            "learning rate must be non-negative, got {}",
            params.learning_rate
        )));
    }
    if params.batch_size == 0 {
        return Err(Error::Optimizer("batch size must be at least 1".into()));
    }
    if n_examples == 0 {
        return Err(Error::Optimizer("no training examples".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut x = x0;
    let mut indices: Vec<usize> = (0..n_examples).collect();
    let all: Vec<usize> = indices.clone();
    let lr = S::from_f64_lit(params.learning_rate);
    let mut epoch_losses = Vec::with_capacity(params.epochs);

    for _epoch in 0..params.epochs {
        indices.shuffle(&mut rng);
        for batch in indices.chunks(params.batch_size) {
            let (loss, grad) = batch_eval(&x, batch);
            if !loss.is_finite() || grad.iter().any(|g| !g.is_finite()) {
                return Err(Error::Optimizer(
                    "objective diverged to a non-finite value".into(),
                ));
            }
            for (xi, gi) in x.iter_mut().zip(&grad) {
                *xi = *xi - lr * *gi;
            }
        }
        let (full_loss, _) = batch_eval(&x, &all);
        let full_loss = full_loss.to_f64().unwrap();
        if !full_loss.is_finite() {
            return Err(Error::Optimizer(
                "objective diverged to a non-finite value".into(),
            ));
        }
        epoch_losses.push(full_loss);
    }
    Ok(GdResult {
        parameters: x,
        epoch_losses,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Mean logistic loss and gradient for 1-D data with weight+bias params.
    fn logistic_batch(
        data: &[(f64, f64)],
    ) -> impl Fn(&[f64], &[usize]) -> (f64, Vec<f64>) + '_ {
        |params: &[f64], batch: &[usize]| {
            let (w, b) = (params[0], params[1]);
            let mut loss = 0.0;
            let mut gw = 0.0;
            let mut gb = 0.0;
            for &i in batch {
                let (x, y) = data[i];
                let z = w * x + b;
                let p = 1.0 / (1.0 + (-z).exp());
                let eps = 1e-12;
                loss -= y * (p + eps).ln() + (1.0 - y) * (1.0 - p + eps).ln();
                gw += (p - y) * x;
                gb += p - y;
            }
            let n = batch.len() as f64;
            (loss / n, vec![gw / n, gb / n])
        }
    }

    fn separable_data() -> Vec<(f64, f64)> {
        (0..50)
            .map(|i| {
                let x = i as f64 / 10.0 - 2.5;
                (x, if x > 0.0 { 1.0 } else { 0.0 })
            })
            .collect()
    }

    #[test]
    fn convex_separable_reaches_full_accuracy() {
        let data = separable_data();
        let params = GdParams {
            learning_rate: 0.5,
            epochs: 200,
            batch_size: 8,
            seed: 1,
        };
        let result = minibatch_gd(data.len(), vec![0.0, 0.0], logistic_batch(&data), &params).unwrap();
        let (w, b) = (result.parameters[0], result.parameters[1]);
        for (x, y) in &data {
            let p = 1.0 / (1.0 + (-(w * x + b)).exp());
            assert_eq!((p > 0.5) as i32 as f64, *y, "x = {x}");
        }
    }

    #[test]
    fn zero_learning_rate_leaves_parameters_unchanged() {
        let data = separable_data();
        let params = GdParams {
            learning_rate: 0.0,
            epochs: 3,
            batch_size: 16,
            seed: 9,
        };
        let result =
            minibatch_gd(data.len(), vec![0.3, -0.7], logistic_batch(&data), &params).unwrap();
        assert_eq!(result.parameters, vec![0.3, -0.7]);
    }

    #[test]
    fn reference_defaults_decrease_loss_each_epoch() {
        // Defaults (1e-4, 4 epochs, batch 16) on a 100x8 synthetic problem:
        // the epoch-end loss must strictly decrease.
        let mut data = Vec::new();
        for i in 0..100 {
            let y = (i % 2) as f64;
            let x: Vec<f64> = (0..8)
                .map(|j| ((i * 31 + j * 17) % 13) as f64 / 13.0 + y * 0.8)
                .collect();
            data.push((x, y));
        }
        let eval = |params: &[f64], batch: &[usize]| {
            let mut loss = 0.0;
            let mut grad = vec![0.0; 9];
            for &i in batch {
                let (x, y) = &data[i];
                let z: f64 = x.iter().zip(params).map(|(a, b)| a * b).sum::<f64>() + params[8];
                let p = 1.0 / (1.0 + (-z).exp());
                let eps = 1e-12;
                loss -= y * (p + eps).ln() + (1.0 - y) * (1.0 - p + eps).ln();
                for j in 0..8 {
                    grad[j] += (p - y) * x[j];
                }
                grad[8] += p - y;
            }
            let n = batch.len() as f64;
            (
                loss / n,
                grad.into_iter().map(|g| g / n).collect::<Vec<f64>>(),
            )
        };
        let result = minibatch_gd(100, vec![0.0; 9], eval, &GdParams::default()).unwrap();
        assert_eq!(result.epoch_losses.len(), 4);
        for pair in result.epoch_losses.windows(2) {
            assert!(pair[1] < pair[0], "epoch loss did not decrease: {pair:?}");
        }
    }

    #[test]
    fn deterministic_for_fixed_seed() {
        let data = separable_data();
        let params = GdParams {
            learning_rate: 0.1,
            epochs: 5,
            batch_size: 4,
            seed: 42,
        };
        let a = minibatch_gd(data.len(), vec![0.0, 0.0], logistic_batch(&data), &params).unwrap();
        let b = minibatch_gd(data.len(), vec![0.0, 0.0], logistic_batch(&data), &params).unwrap();
        assert_eq!(a.parameters, b.parameters);
        assert_eq!(a.epoch_losses, b.epoch_losses);
    }

    #[test]
    fn divergence_is_reported() {
        // Exploding quadratic with a huge learning rate.
        let eval = |params: &[f64], _batch: &[usize]| {
            let x = params[0];
            (x * x, vec![2.0 * x])
        };
        let params = GdParams {
            learning_rate: 1e308,
            epochs: 5,
            batch_size: 1,
            seed: 0,
        };
        let err = minibatch_gd(4, vec![1.0], eval, &params).unwrap_err();
        assert!(matches!(err, Error::Optimizer(_)));
    }
}
