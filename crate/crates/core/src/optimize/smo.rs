//! Sequential minimal optimization for the soft-margin kernel SVM dual.
//!
//! Working-pair selection follows the first-order heuristic: an outer loop
//! alternates full passes with passes over non-bound points; for each KKT
//! violator the partner maximizes |E1 − E2|, with deterministic rotating
//! fallbacks. Kernel rows are memoized in an LRU cache with a byte budget.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::matrix::{squared_distance, Matrix};
use crate::scalar::Scalar;

pub trait Kernel<S: Scalar>: Sync {
    fn eval(&self, a: &[S], b: &[S]) -> S;
}

#[derive(Debug, Clone, Copy)]
pub struct RbfKernel {
    pub gamma: f64,
}

impl<S: Scalar> Kernel<S> for RbfKernel {
    fn eval(&self, a: &[S], b: &[S]) -> S {
        let d2 = squared_distance(a, b).to_f64().unwrap();
        S::from_f64_lit((-self.gamma * d2).exp())
    }
}

#[derive(Debug, Clone, Copy)]
pub struct LinearKernel;

impl<S: Scalar> Kernel<S> for LinearKernel {
    fn eval(&self, a: &[S], b: &[S]) -> S {
        crate::matrix::dot(a, b)
    }
}

#[derive(Debug, Clone)]
pub struct SmoParams {
    /// Box constraint C > 0.
    pub c: f64,
    /// KKT tolerance.
    pub tol: f64,
    /// Maximum number of outer passes.
    pub max_passes: usize,
    /// Kernel row cache budget in bytes.
    pub cache_bytes: usize,
}

impl Default for SmoParams {
    fn default() -> Self {
        Self {
            c: 1.0,
            tol: 1e-3,
            max_passes: 10_000,
            cache_bytes: 64 << 20,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SmoResult<S> {
    pub alpha: Vec<S>,
    pub bias: S,
    pub converged: bool,
    /// Outer passes executed.
    pub passes: usize,
    pub support_indices: Vec<usize>,
    /// Maximum KKT violation at the final iterate.
    pub max_kkt_violation: f64,
}

/// LRU cache of kernel rows.
struct RowCache<'a, S: Scalar> {
    x: &'a Matrix<S>,
    kernel: &'a dyn Kernel<S>,
    rows: HashMap<usize, (Arc<Vec<f64>>, u64)>,
    capacity: usize,
    tick: u64,
}

impl<'a, S: Scalar> RowCache<'a, S> {
    fn new(x: &'a Matrix<S>, kernel: &'a dyn Kernel<S>, cache_bytes: usize) -> Self {
        let row_bytes = x.n_rows().max(1) * std::mem::size_of::<f64>();
        let capacity = (cache_bytes / row_bytes).max(2);
        Self {
            x,
            kernel,
            rows: HashMap::new(),
            capacity,
            tick: 0,
        }
    }

    fn row(&mut self, i: usize) -> Arc<Vec<f64>> {
        self.tick += 1;
        let tick = self.tick;
        if let Some((row, stamp)) = self.rows.get_mut(&i) {
            *stamp = tick;
            return Arc::clone(row);
        }
        let xi = self.x.row(i);
        let row: Vec<f64> = (0..self.x.n_rows())
            .map(|j| self.kernel.eval(xi, self.x.row(j)).to_f64().unwrap())
            .collect();
        let row = Arc::new(row);
        if self.rows.len() >= self.capacity {
            if let Some((&oldest, _)) = self.rows.iter().min_by_key(|(_, (_, stamp))| *stamp) {
                self.rows.remove(&oldest);
            }
        }
        self.rows.insert(i, (Arc::clone(&row), tick));
        row
    }
}

struct Solver<'a, S: Scalar> {
    y: Vec<f64>,
    alpha: Vec<f64>,
    errors: Vec<f64>,
    bias: f64,
    c: f64,
    tol: f64,
    cache: RowCache<'a, S>,
    n: usize,
}

const ALPHA_EPS: f64 = 1e-12;

impl<'a, S: Scalar> Solver<'a, S> {
    fn is_non_bound(&self, i: usize) -> bool {
        self.alpha[i] > ALPHA_EPS && self.alpha[i] < self.c - ALPHA_EPS
    }

    /// KKT violation of point i (0 when satisfied within tol).
    fn kkt_violation(&self, i: usize) -> f64 {
        let r = self.y[i] * self.errors[i];
        if self.alpha[i] <= ALPHA_EPS {
            (-r).max(0.0)
        } else if self.alpha[i] >= self.c - ALPHA_EPS {
            r.max(0.0)
        } else {
            r.abs()
        }
    }

    fn max_kkt_violation(&self) -> f64 {
        (0..self.n).map(|i| self.kkt_violation(i)).fold(0.0, f64::max)
    }

    fn take_step(&mut self, i1: usize, i2: usize) -> bool {
        if i1 == i2 {
            return false;
        }
        let (a1_old, a2_old) = (self.alpha[i1], self.alpha[i2]);
        let (y1, y2) = (self.y[i1], self.y[i2]);
        let (e1, e2) = (self.errors[i1], self.errors[i2]);
        let s = y1 * y2;
        let (low, high) = if s > 0.0 {
            ((a1_old + a2_old - self.c).max(0.0), (a1_old + a2_old).min(self.c))
        } else {
            ((a2_old - a1_old).max(0.0), (self.c + a2_old - a1_old).min(self.c))
        };
        if high - low < ALPHA_EPS {
            return false;
        }
        let row1 = self.cache.row(i1);
        let row2 = self.cache.row(i2);
        let (k11, k22, k12) = (row1[i1], row2[i2], row1[i2]);
        let eta = k11 + k22 - 2.0 * k12;

        let mut a2 = if eta > 1e-15 {
            (a2_old + y2 * (e1 - e2) / eta).clamp(low, high)
        } else {
            // Degenerate curvature: compare the dual objective at both ends.
            let b = self.bias;
            let f1 = e1 + y1;
            let f2 = e2 + y2;
            let v1 = f1 - b - y1 * a1_old * k11 - y2 * a2_old * k12;
            let v2 = f2 - b - y1 * a1_old * k12 - y2 * a2_old * k22;
            let gamma = a1_old + s * a2_old;
            let objective = |a2: f64| -> f64 {
                let a1 = gamma - s * a2;
                a1 + a2
                    - 0.5 * k11 * a1 * a1
                    - 0.5 * k22 * a2 * a2
                    - s * k12 * a1 * a2
                    - y1 * a1 * v1
                    - y2 * a2 * v2
            };
            let (lo_obj, hi_obj) = (objective(low), objective(high));
            if lo_obj > hi_obj + 1e-12 {
                low
            } else if hi_obj > lo_obj + 1e-12 {
                high
            } else {
                return false;
            }
        };
        if a2 < ALPHA_EPS {
            a2 = 0.0;
        } else if a2 > self.c - ALPHA_EPS {
            a2 = self.c;
        }
        if (a2 - a2_old).abs() < ALPHA_EPS * (a2 + a2_old + ALPHA_EPS) {
            return false;
        }
        let a1 = a1_old + s * (a2_old - a2);
        let a1 = a1.clamp(0.0, self.c);

        let d1 = y1 * (a1 - a1_old);
        let d2 = y2 * (a2 - a2_old);
        let b1 = self.bias - e1 - d1 * k11 - d2 * k12;
        let b2 = self.bias - e2 - d1 * k12 - d2 * k22;
        let new_bias = if a1 > ALPHA_EPS && a1 < self.c - ALPHA_EPS {
            b1
        } else if a2 > ALPHA_EPS && a2 < self.c - ALPHA_EPS {
            b2
        } else {
            (b1 + b2) / 2.0
        };
        let delta_b = new_bias - self.bias;

        self.alpha[i1] = a1;
        self.alpha[i2] = a2;
        self.bias = new_bias;
        for j in 0..self.n {
            self.errors[j] += d1 * row1[j] + d2 * row2[j] + delta_b;
        }
        true
    }

    fn examine(&mut self, i2: usize) -> bool {
        if self.kkt_violation(i2) <= self.tol {
            return false;
        }
        let e2 = self.errors[i2];
        // First choice: maximal |E1 - E2| over non-bound points.
        let mut best: Option<(usize, f64)> = None;
        for i in 0..self.n {
            if i != i2 && self.is_non_bound(i) {
                let gap = (self.errors[i] - e2).abs();
                if best.map_or(true, |(_, g)| gap > g) {
                    best = Some((i, gap));
                }
            }
        }
        if let Some((i1, _)) = best {
            if self.take_step(i1, i2) {
                return true;
            }
        }
        // Fallbacks: rotate deterministically from i2 + 1.
        for offset in 1..self.n {
            let i1 = (i2 + offset) % self.n;
            if self.is_non_bound(i1) && self.take_step(i1, i2) {
                return true;
            }
        }
        for offset in 1..self.n {
            let i1 = (i2 + offset) % self.n;
            if self.take_step(i1, i2) {
                return true;
            }
        }
        false
    }
}

/// Solve the SVM dual. See [`smo_solve_with_monitor`] for the invariant hook.
pub fn smo_solve<S: Scalar>(
    x: &Matrix<S>,
    y: &[S],
    kernel: &dyn Kernel<S>,
    params: &SmoParams,
) -> Result<SmoResult<S>> {
    smo_solve_with_monitor(x, y, kernel, params, |_, _, _| {})
}

/// Solve the SVM dual, calling `monitor(pass, alpha, bias)` after every
/// outer pass so callers can assert feasibility throughout the run.
pub fn smo_solve_with_monitor<S: Scalar>(
    x: &Matrix<S>,
    y: &[S],
    kernel: &dyn Kernel<S>,
    params: &SmoParams,
    mut monitor: impl FnMut(usize, &[f64], f64),
) -> Result<SmoResult<S>> {
    let n = x.n_rows();
    if n < 2 {
        return Err(Error::Training(
            "SMO needs at least 2 training examples".into(),
        ));
    }
    if params.c <= 0.0 {
        return Err(Error::Training(format!("C must be positive, got {}", params.c)));
    }
    let y: Vec<f64> = y.iter().map(|v| v.to_f64().unwrap()).collect();
    if y.iter().any(|v| *v != 1.0 && *v != -1.0) {
        return Err(Error::Training("labels must be -1 or +1".into()));
    }
    if !(y.contains(&1.0) && y.contains(&-1.0)) {
        return Err(Error::Training("both classes must be present".into()));
    }

    let errors: Vec<f64> = y.iter().map(|yi| -yi).collect();
    let mut solver = Solver {
        alpha: vec![0.0; n],
        errors,
        bias: 0.0,
        c: params.c,
        tol: params.tol,
        cache: RowCache::new(x, kernel, params.cache_bytes),
        n,
        y,
    };

    let mut examine_all = true;
    let mut passes = 0;
    loop {
        let mut changed = 0usize;
        if examine_all {
            for i in 0..n {
                changed += solver.examine(i) as usize;
            }
        } else {
            for i in 0..n {
                if solver.is_non_bound(i) {
                    changed += solver.examine(i) as usize;
                }
            }
        }
        passes += 1;
        monitor(passes, &solver.alpha, solver.bias);
        if examine_all {
            if changed == 0 {
                break;
            }
            examine_all = false;
        } else if changed == 0 {
            examine_all = true;
        }
        if passes >= params.max_passes {
            break;
        }
    }

    let max_kkt_violation = solver.max_kkt_violation();
    let support_indices = (0..n).filter(|&i| solver.alpha[i] > ALPHA_EPS).collect();
    Ok(SmoResult {
        alpha: solver.alpha.iter().map(|a| S::from_f64_lit(*a)).collect(),
        bias: S::from_f64_lit(solver.bias),
        converged: max_kkt_violation <= params.tol,
        passes,
        support_indices,
        max_kkt_violation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn decision(x: &Matrix<f64>, y: &[f64], alpha: &[f64], bias: f64, kernel: &dyn Kernel<f64>, point: &[f64]) -> f64 {
        let mut f = bias;
        for i in 0..x.n_rows() {
            if alpha[i] > 0.0 {
                f += alpha[i] * y[i] * kernel.eval(x.row(i), point);
            }
        }
        f
    }

    #[test]
    fn two_point_analytic_solution() {
        let x: Matrix<f64> = Matrix::from_rows(vec![vec![-1.0], vec![1.0]]);
        let y = [-1.0, 1.0];
        let params = SmoParams {
            c: 1000.0,
            tol: 1e-9,
            ..Default::default()
        };
        let res = smo_solve(&x, &y, &LinearKernel, &params).unwrap();
        assert!(res.converged);
        assert!((res.alpha[0] - 0.5).abs() < 1e-9, "alpha0 = {}", res.alpha[0]);
        assert!((res.alpha[1] - 0.5).abs() < 1e-9);
        assert!(res.bias.abs() < 1e-9);
        assert_eq!(res.support_indices, vec![0, 1]);
        // Margins are exactly ±1 and the boundary sits at 0.
        let f_neg = decision(&x, &y, &res.alpha, res.bias, &LinearKernel, &[-1.0]);
        let f_pos = decision(&x, &y, &res.alpha, res.bias, &LinearKernel, &[1.0]);
        let f_zero = decision(&x, &y, &res.alpha, res.bias, &LinearKernel, &[0.0]);
        assert!((f_neg + 1.0).abs() < 1e-9);
        assert!((f_pos - 1.0).abs() < 1e-9);
        assert!(f_zero.abs() < 1e-9);
    }

    #[test]
    fn separable_blobs_reach_full_training_accuracy() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut rows = Vec::new();
        let mut y = Vec::new();
        for _ in 0..40 {
            rows.push(vec![rng.gen::<f64>() - 3.0, rng.gen::<f64>() - 3.0]);
            y.push(-1.0);
            rows.push(vec![rng.gen::<f64>() + 3.0, rng.gen::<f64>() + 3.0]);
            y.push(1.0);
        }
        let x = Matrix::from_rows(rows);
        let params = SmoParams {
            c: 10.0,
            ..Default::default()
        };
        let res = smo_solve(&x, &y, &LinearKernel, &params).unwrap();
        assert!(res.converged);
        for i in 0..x.n_rows() {
            let f = decision(&x, &y, &res.alpha, res.bias, &LinearKernel, x.row(i));
            assert!(f * y[i] > 0.0, "point {i} misclassified (f = {f})");
        }
    }

    /// Brute-force grid search over the 2-variable dual for the degenerate
    /// contradictory-points problem.
    fn brute_force_two_point_dual(k: f64, c: f64) -> (f64, f64, f64) {
        // max a1 + a2 - 0.5 k (a1 - a2)^2 subject to a1 = a2 (equality
        // constraint with y = (+1, -1)), 0 <= a <= c.
        let mut best = (0.0, 0.0, f64::MIN);
        let steps = 2000;
        for i in 0..=steps {
            let a = c * i as f64 / steps as f64;
            // a1 = a2 = a by the equality constraint.
            let obj = 2.0 * a - 0.5 * k * (a - a).powi(2);
            if obj > best.2 {
                best = (a, a, obj);
            }
        }
        best
    }

    #[test]
    fn contradictory_points_hit_box_bounds() {
        // Same x with both labels: the dual pushes both alphas to C.
        let x: Matrix<f64> = Matrix::from_rows(vec![vec![2.0], vec![2.0]]);
        let y = [1.0, -1.0];
        let params = SmoParams {
            c: 1.0,
            tol: 1e-6,
            ..Default::default()
        };
        let res = smo_solve(&x, &y, &LinearKernel, &params).unwrap();
        let (a1_star, a2_star, _) = brute_force_two_point_dual(4.0, 1.0);
        assert!((res.alpha[0] - a1_star).abs() < 1e-3, "alpha0 = {}", res.alpha[0]);
        assert!((res.alpha[1] - a2_star).abs() < 1e-3);
        assert!((res.alpha[0] - 1.0).abs() < 1e-9, "expected box bound");
    }

    #[test]
    fn feasibility_holds_at_every_outer_pass() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut rows = Vec::new();
        let mut y = Vec::new();
        for i in 0..60 {
            let label = if i % 2 == 0 { 1.0 } else { -1.0 };
            rows.push(vec![
                rng.gen::<f64>() * 2.0 + label,
                rng.gen::<f64>() * 2.0 - label,
            ]);
            y.push(label);
        }
        let x = Matrix::from_rows(rows);
        let params = SmoParams {
            c: 5.0,
            ..Default::default()
        };
        let mut checked = 0;
        let res = smo_solve_with_monitor(&x, &y, &RbfKernel { gamma: 0.5 }, &params, |_, alpha, _| {
            let mut sum = 0.0;
            for (i, a) in alpha.iter().enumerate() {
                assert!(*a >= 0.0 && *a <= 5.0, "box constraint violated");
                sum += a * y[i];
            }
            assert!(sum.abs() < 1e-8, "equality constraint violated: {sum}");
            checked += 1;
        })
        .unwrap();
        assert!(checked >= 1);
        assert!(res.converged);
    }

    #[test]
    fn rejects_single_class() {
        let x: Matrix<f64> = Matrix::from_rows(vec![vec![0.0], vec![1.0]]);
        let err = smo_solve(&x, &[1.0, 1.0], &LinearKernel, &SmoParams::default()).unwrap_err();
        assert!(matches!(err, Error::Training(_)));
    }

    #[test]
    fn kkt_satisfied_on_random_problem() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut rows = Vec::new();
        let mut y = Vec::new();
        for _ in 0..100 {
            let label = if rng.gen::<bool>() { 1.0 } else { -1.0 };
            rows.push(vec![
                rng.gen::<f64>() + 0.3 * label,
                rng.gen::<f64>() - 0.3 * label,
                rng.gen::<f64>(),
            ]);
            y.push(label);
        }
        let x = Matrix::from_rows(rows);
        let params = SmoParams {
            c: 2.0,
            tol: 1e-3,
            ..Default::default()
        };
        let res = smo_solve(&x, &y, &RbfKernel { gamma: 1.0 }, &params).unwrap();
        assert!(res.converged, "violation = {}", res.max_kkt_violation);
        assert!(res.max_kkt_violation <= 1e-3);
    }
}
