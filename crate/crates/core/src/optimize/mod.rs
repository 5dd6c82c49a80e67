//! From-scratch numerical optimizers shared by the classifiers: SMO for
//! kernel SVM duals, limited-memory BFGS with a strong-Wolfe line search,
//! and seeded minibatch gradient descent.

mod gd;
mod lbfgs;
mod smo;

pub use gd::{minibatch_gd, GdParams, GdResult};
pub use lbfgs::{lbfgs_minimize, IterationTrace, LbfgsParams, LbfgsResult};
pub use smo::{smo_solve, smo_solve_with_monitor, Kernel, LinearKernel, RbfKernel, SmoParams, SmoResult};

use crate::error::Result;
use crate::scalar::Scalar;

/// Maximum relative error between the analytic gradient and central finite
/// differences at `x`. The independent oracle behind every gradient-based
/// routine in this crate.
pub fn gradient_check<S: Scalar>(
    f: &dyn Fn(&[S]) -> (S, Vec<S>),
    x: &[S],
    step: f64,
) -> f64 {
    let (_, analytic) = f(x);
    let mut worst: f64 = 0.0;
    for i in 0..x.len() {
        let h = S::from_f64_lit(step);
        let mut plus = x.to_vec();
        plus[i] = plus[i] + h;
        let mut minus = x.to_vec();
        minus[i] = minus[i] - h;
        let (fp, _) = f(&plus);
        let (fm, _) = f(&minus);
        let numeric = (fp.to_f64().unwrap() - fm.to_f64().unwrap()) / (2.0 * step);
        let a = analytic[i].to_f64().unwrap();
        let denom = a.abs().max(numeric.abs()).max(1.0);
        worst = worst.max((a - numeric).abs() / denom);
    }
    worst
}

/// Exhaustive argmax over a hyperparameter grid with a caller-supplied score.
/// Ties break to the earliest grid entry, so results are reproducible.
pub fn grid_search<P, S: Scalar>(
    grid: &[P],
    mut score: impl FnMut(&P) -> Result<S>,
) -> Result<(usize, S)> {
    let mut best: Option<(usize, S)> = None;
    for (i, point) in grid.iter().enumerate() {
        let s = score(point)?;
        let better = match &best {
            None => true,
            Some((_, b)) => s > *b,
        };
        if better {
            best = Some((i, s));
        }
    }
    best.ok_or_else(|| crate::error::Error::Config("empty hyperparameter grid".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gradient_check_flags_wrong_gradient() {
        let good = |x: &[f64]| (x[0] * x[0], vec![2.0 * x[0]]);
        let bad = |x: &[f64]| (x[0] * x[0], vec![3.0 * x[0]]);
        assert!(gradient_check(&good, &[1.3], 1e-6) < 1e-8);
        assert!(gradient_check(&bad, &[1.3], 1e-6) > 1e-2);
    }

    #[test]
    fn grid_search_picks_argmax_first_tie() {
        let grid = vec![1.0, 3.0, 3.0, 2.0];
        let (idx, best) = grid_search(&grid, |p| Ok(*p)).unwrap();
        assert_eq!(idx, 1);
        assert_eq!(best, 3.0);
    }
}
