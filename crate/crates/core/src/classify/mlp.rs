//! Two-hidden-layer tanh MLP with a sigmoid output, trained full-batch by
//! L-BFGS with L2 weight decay.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::ModelParams;
use crate::error::Result;
use crate::matrix::Matrix;
use crate::optimize::{lbfgs_minimize, LbfgsParams};
use crate::scalar::Scalar;

/// Layer shapes for input dimension `d`: d → h1 → h2 → 1.
fn layer_dims(d: usize, hidden: (usize, usize)) -> [(usize, usize); 3] {
    [(hidden.0, d), (hidden.1, hidden.0), (1, hidden.1)]
}

fn param_count(dims: &[(usize, usize)]) -> usize {
    dims.iter().map(|(o, i)| o * i + o).sum()
}

fn sigmoid(z: f64) -> f64 {
    if z >= 0.0 {
        1.0 / (1.0 + (-z).exp())
    } else {
        let e = z.exp();
        e / (1.0 + e)
    }
}

/// Unpack the flat parameter vector into per-layer (weights, biases) views.
fn unpack(params: &[f64], dims: &[(usize, usize)]) -> Vec<(Vec<f64>, Vec<f64>)> {
    let mut layers = Vec::with_capacity(dims.len());
    let mut at = 0;
    for (out, input) in dims {
        let w = params[at..at + out * input].to_vec();
        at += out * input;
        let b = params[at..at + out].to_vec();
        at += out;
        layers.push((w, b));
    }
    layers
}

/// Mean BCE over rows + 0.5·alpha·‖W‖²/n (biases unpenalized), with the
/// backprop gradient. Parameters are a flat vector. Exposed publicly so the
/// gradient can be checked against finite differences.
pub fn mlp_loss_closure<'a, S: Scalar>(
    x: &'a Matrix<S>,
    y: &'a [f64],
    hidden: (usize, usize),
    alpha: f64,
) -> impl Fn(&[S]) -> (S, Vec<S>) + 'a {
    move |params: &[S]| {
        let d = x.n_cols();
        let dims = layer_dims(d, hidden);
        let p64: Vec<f64> = params.iter().map(|v| v.to_f64().unwrap()).collect();
        let layers = unpack(&p64, &dims);
        let n = x.n_rows() as f64;
        let mut loss = 0.0;
        let mut grad = vec![0.0; p64.len()];

        for (row_idx, yi) in y.iter().enumerate() {
            let input: Vec<f64> = x
                .row(row_idx)
                .iter()
                .map(|v| v.to_f64().unwrap())
                .collect();
            // Forward pass, keeping activations per layer.
            let mut activations: Vec<Vec<f64>> = vec![input];
            for (li, (w, b)) in layers.iter().enumerate() {
                let (out, inp) = dims[li];
                let prev = &activations[li];
                let mut z = vec![0.0; out];
                for o in 0..out {
                    let mut acc = b[o];
                    let row = &w[o * inp..(o + 1) * inp];
                    for (wi, pi) in row.iter().zip(prev) {
                        acc += wi * pi;
                    }
                    z[o] = acc;
                }
                let a: Vec<f64> = if li + 1 == layers.len() {
                    z.iter().map(|v| sigmoid(*v)).collect()
                } else {
                    z.iter().map(|v| v.tanh()).collect()
                };
                activations.push(a);
            }
            let p = activations.last().unwrap()[0];
            let target = if *yi > 0.0 { 1.0 } else { 0.0 };
            let eps = 1e-12;
            loss -= target * (p + eps).ln() + (1.0 - target) * (1.0 - p + eps).ln();

            // Backward pass. For sigmoid+BCE the output delta is (p - t).
            let mut delta = vec![p - target];
            let mut offset = p64.len();
            for li in (0..layers.len()).rev() {
                let (out, inp) = dims[li];
                offset -= out * inp + out;
                let prev = &activations[li];
                let (w, _) = &layers[li];
                for o in 0..out {
                    let base = offset + o * inp;
                    for i in 0..inp {
                        grad[base + i] += delta[o] * prev[i];
                    }
                    grad[offset + out * inp + o] += delta[o];
                }
                if li > 0 {
                    // delta_prev = (W^T delta) ⊙ (1 - a²)
                    let a = &activations[li];
                    let mut next = vec![0.0; inp];
                    for (i, nd) in next.iter_mut().enumerate() {
                        let mut acc = 0.0;
                        for o in 0..out {
                            acc += w[o * inp + i] * delta[o];
                        }
                        *nd = acc * (1.0 - a[i] * a[i]);
                    }
                    delta = next;
                }
            }
        }

        loss /= n;
        for g in grad.iter_mut() {
            *g /= n;
        }
        // L2 on weights only.
        let mut at = 0;
        for (out, inp) in dims {
            for k in 0..out * inp {
                loss += 0.5 * alpha * p64[at + k] * p64[at + k] / n;
                grad[at + k] += alpha * p64[at + k] / n;
            }
            at += out * inp + out;
        }
        (
            S::from_f64_lit(loss),
            grad.into_iter().map(S::from_f64_lit).collect(),
        )
    }
}

pub(super) fn train<S: Scalar>(
    x: &Matrix<S>,
    y: &[f64],
    hidden: (usize, usize),
    alpha: f64,
    tol: f64,
    max_iter: usize,
    seed: u64,
) -> Result<ModelParams<S>> {
    let d = x.n_cols();
    let dims = layer_dims(d, hidden);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut x0 = Vec::with_capacity(param_count(&dims));
    for (out, inp) in dims {
        let bound = (6.0 / (out + inp) as f64).sqrt();
        for _ in 0..out * inp {
            x0.push(S::from_f64_lit(rng.gen_range(-bound..bound)));
        }
        for _ in 0..out {
            x0.push(S::zero());
        }
    }
    let params = LbfgsParams {
        tol,
        max_iter,
        ..Default::default()
    };
    let result = lbfgs_minimize(mlp_loss_closure(x, y, hidden, alpha), x0, &params)?;
    let p64: Vec<f64> = result.x.iter().map(|v| v.to_f64().unwrap()).collect();
    let layers = unpack(&p64, &dims)
        .into_iter()
        .zip(dims)
        .map(|((w, b), (out, inp))| {
            (
                Matrix::from_flat(out, inp, w.into_iter().map(S::from_f64_lit).collect()),
                b.into_iter().map(S::from_f64_lit).collect::<Vec<S>>(),
            )
        })
        .collect();
    Ok(ModelParams::Mlp { layers })
}

/// Probability of the positive class per row.
pub(super) fn scores<S: Scalar>(layers: &[(Matrix<S>, Vec<S>)], x: &Matrix<S>) -> Vec<S> {
    (0..x.n_rows())
        .map(|r| {
            let mut a: Vec<f64> = x.row(r).iter().map(|v| v.to_f64().unwrap()).collect();
            for (li, (w, b)) in layers.iter().enumerate() {
                let mut z = vec![0.0; w.n_rows()];
                for (o, zo) in z.iter_mut().enumerate() {
                    let mut acc = b[o].to_f64().unwrap();
                    for (wi, ai) in w.row(o).iter().zip(&a) {
                        acc += wi.to_f64().unwrap() * ai;
                    }
                    *zo = acc;
                }
                a = if li + 1 == layers.len() {
                    z.iter().map(|v| sigmoid(*v)).collect()
                } else {
                    z.iter().map(|v| v.tanh()).collect()
                };
            }
            S::from_f64_lit(a[0])
        })
        .collect()
}
