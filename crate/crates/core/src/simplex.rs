//! Least squares over the probability simplex.
//!
//! `min |sum_i w_i v_i - target|` subject to `w >= 0`, `sum w = 1`, solved
//! with a primal active-set method on the normal equations. The problems
//! here have a handful of vertices, so every subproblem is a dense KKT solve.

use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

pub const MAX_ITER: usize = 10_000;
const RIDGE: f64 = 1e-14;
const MULT_TOL: f64 = 1e-13;

#[derive(Debug, Clone, PartialEq)]
pub struct SimplexFit {
    pub weights: Vec<f64>,
    /// Euclidean norm of `sum w_i v_i - target`.
    pub residual: f64,
    pub iterations: usize,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn residual(vertices: &[Vec<f64>], target: &[f64], w: &[f64]) -> f64 {
    let mut r = target.iter().map(|t| -t).collect::<Vec<_>>();
    for (v, &wi) in vertices.iter().zip(w) {
        for (ri, vi) in r.iter_mut().zip(v) {
            *ri += wi * vi;
        }
    }
    dot(&r, &r).sqrt()
}

/// Solves `a x = b` by Gaussian elimination with partial pivoting.
fn solve_dense(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[piv][col].abs() < 1e-300 {
            return None;
        }
        a.swap(col, piv);
        b.swap(col, piv);
        let (top, rest) = a.split_at_mut(col + 1);
        let pivot_row = &top[col];
        for (off, row) in rest.iter_mut().enumerate() {
            let f = row[col] / pivot_row[col];
            if f != 0.0 {
                for (x, p) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                    *x -= f * p;
                }
                b[col + 1 + off] -= f * b[col];
            }
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let s: f64 = (row + 1..n).map(|k| a[row][k] * x[k]).sum();
        x[row] = (b[row] - s) / a[row][row];
    }
    Some(x)
}

/// Minimiser of the quadratic restricted to `free` (others fixed at zero)
/// under `sum w = 1`; returns the weights on `free` and the multiplier.
fn equality_subproblem(gram: &[Vec<f64>], lin: &[f64], free: &[usize]) -> Option<(Vec<f64>, f64)> {
    let k = free.len();
    let scale = free.iter().map(|&i| gram[i][i]).fold(0.0, f64::max).max(1.0);
    let mut a = vec![vec![0.0; k + 1]; k + 1];
    let mut b = vec![0.0; k + 1];
    for (r, &i) in free.iter().enumerate() {
        for (c, &j) in free.iter().enumerate() {
            a[r][c] = gram[i][j];
        }
        a[r][r] += RIDGE * scale;
        a[r][k] = 1.0;
        a[k][r] = 1.0;
        b[r] = lin[i];
    }
    b[k] = 1.0;
    let x = solve_dense(a, b)?;
    Some((x[..k].to_vec(), x[k]))
}

/// Closest point of the convex hull of `vertices` to `target`.
///
/// Panics if `vertices` is empty or dimensions disagree.
pub fn project_onto_hull(vertices: &[Vec<f64>], target: &[f64]) -> SimplexFit {
    assert!(!vertices.is_empty(), "need at least one vertex");
    assert!(vertices.iter().all(|v| v.len() == target.len()), "dimension mismatch");
    let m = vertices.len();
    let gram: Vec<Vec<f64>> = vertices.iter().map(|a| vertices.iter().map(|b| dot(a, b)).collect()).collect();
    let lin: Vec<f64> = vertices.iter().map(|v| dot(v, target)).collect();

    // start from the nearest vertex
    let start = (0..m)
        .min_by(|&i, &j| {
            let di = gram[i][i] - 2.0 * lin[i];
            let dj = gram[j][j] - 2.0 * lin[j];
            di.total_cmp(&dj)
        })
        .expect("nonempty");
    let mut w = vec![0.0; m];
    w[start] = 1.0;
    let mut free = vec![false; m];
    free[start] = true;

    let mut iterations = 0;
    while iterations < MAX_ITER {
        iterations += 1;
        let idx: Vec<usize> = (0..m).filter(|&i| free[i]).collect();
        let Some((sol, mu)) = equality_subproblem(&gram, &lin, &idx) else {
            break;
        };
        if sol.iter().all(|&x| x >= 0.0) {
            for (&i, &x) in idx.iter().zip(&sol) {
                w[i] = x;
            }
            // multipliers of the bound constraints: lambda_i = (G w - c)_i + mu
            let release = (0..m)
                .filter(|&i| !free[i])
                .map(|i| (i, dot(&gram[i], &w) - lin[i] + mu))
                .min_by(|a, b| a.1.total_cmp(&b.1));
            match release {
                Some((i, lambda)) if lambda < -MULT_TOL * (1.0 + mu.abs()) => free[i] = true,
                _ => break,
            }
        } else {
            // step toward the subproblem solution until a weight hits zero
            let mut step = 1.0;
            let mut blocking = None;
            for (&i, &x) in idx.iter().zip(&sol) {
                if x < 0.0 {
                    let t = w[i] / (w[i] - x);
                    if t < step {
                        step = t;
                        blocking = Some(i);
                    }
                }
            }
            for (&i, &x) in idx.iter().zip(&sol) {
                w[i] += step * (x - w[i]);
            }
            if let Some(i) = blocking {
                w[i] = 0.0;
                free[i] = false;
            }
            for &i in &idx {
                if w[i] <= 0.0 {
                    w[i] = 0.0;
                    free[i] = false;
                }
            }
            if !free.iter().any(|&f| f) {
                free[start] = true;
            }
        }
    }

    let total: f64 = w.iter().sum();
    w.iter_mut().for_each(|x| *x /= total);
    SimplexFit {
        residual: residual(vertices, target, &w),
        weights: w,
        iterations,
    }
}
