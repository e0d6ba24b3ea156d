//! Nelder-Mead simplex descent with dimension-adaptive coefficients.

use alloc::vec;
use alloc::vec::Vec;

#[derive(Debug, Clone, Copy)]
pub struct NelderMeadOptions {
    /// Edge length of the initial simplex.
    pub initial_step: f64,
    /// Stop once every vertex is within this distance of the best one.
    pub min_step: f64,
    pub max_evals: usize,
}

#[derive(Debug, Clone)]
pub struct NelderMeadResult {
    pub x: Vec<f64>,
    pub value: f64,
    pub evals: usize,
    /// `true` if the simplex collapsed below `min_step` before the budget ran out.
    pub converged: bool,
}

fn max_spread(simplex: &[Vec<f64>], best: usize) -> f64 {
    simplex
        .iter()
        .flat_map(|v| v.iter().zip(&simplex[best]).map(|(a, b)| (a - b).abs()))
        .fold(0.0, f64::max)
}

pub fn minimize<F: FnMut(&[f64]) -> f64>(mut f: F, x0: &[f64], opts: NelderMeadOptions) -> NelderMeadResult {
    let d = x0.len();
    let dn = d.max(1) as f64;
    let (alpha, beta, gamma, delta) = (1.0, 1.0 + 2.0 / dn, 0.75 - 1.0 / (2.0 * dn), 1.0 - 1.0 / dn);
    let gamma = gamma.max(0.5);
    let delta = delta.max(0.5);

    let mut evals = 0usize;
    let mut eval = |x: &[f64], evals: &mut usize| {
        *evals += 1;
        let v = f(x);
        if v.is_nan() {
            f64::INFINITY
        } else {
            v
        }
    };

    let mut simplex: Vec<Vec<f64>> = Vec::with_capacity(d + 1);
    simplex.push(x0.to_vec());
    for i in 0..d {
        let mut v = x0.to_vec();
        v[i] += opts.initial_step;
        simplex.push(v);
    }
    let mut values: Vec<f64> = simplex.iter().map(|x| eval(x, &mut evals)).collect();
    let mut centroid = vec![0.0; d];
    let mut trial = vec![0.0; d];
    let mut converged = false;

    while evals < opts.max_evals {
        let mut order: Vec<usize> = (0..=d).collect();
        order.sort_by(|&i, &j| values[i].total_cmp(&values[j]));
        let (best, worst, second_worst) = (order[0], order[d], order[d.saturating_sub(1)]);
        if max_spread(&simplex, best) < opts.min_step {
            converged = true;
            break;
        }

        centroid.iter_mut().for_each(|c| *c = 0.0);
        for &i in &order[..d] {
            for (c, x) in centroid.iter_mut().zip(&simplex[i]) {
                *c += x / dn;
            }
        }
        let point = |t: f64, out: &mut Vec<f64>, simplex: &[Vec<f64>]| {
            for ((o, c), w) in out.iter_mut().zip(&centroid).zip(&simplex[worst]) {
                *o = c + t * (c - w);
            }
        };

        point(alpha, &mut trial, &simplex);
        let fr = eval(&trial, &mut evals);
        if fr < values[best] {
            let reflected = trial.clone();
            point(alpha * beta, &mut trial, &simplex);
            let fe = eval(&trial, &mut evals);
            if fe < fr {
                simplex[worst].copy_from_slice(&trial);
                values[worst] = fe;
            } else {
                simplex[worst] = reflected;
                values[worst] = fr;
            }
            continue;
        }
        if fr < values[second_worst] {
            simplex[worst].copy_from_slice(&trial);
            values[worst] = fr;
            continue;
        }
        let (t, bound) = if fr < values[worst] {
            (alpha * gamma, fr)
        } else {
            (-gamma, values[worst])
        };
        point(t, &mut trial, &simplex);
        let fc = eval(&trial, &mut evals);
        if fc <= bound {
            simplex[worst].copy_from_slice(&trial);
            values[worst] = fc;
            continue;
        }
        // shrink toward the best vertex
        let anchor = simplex[best].clone();
        for &i in &order[1..] {
            for (x, a) in simplex[i].iter_mut().zip(&anchor) {
                *x = a + delta * (*x - a);
            }
            values[i] = eval(&simplex[i], &mut evals);
        }
    }

    let best = (0..=d).min_by(|&i, &j| values[i].total_cmp(&values[j])).expect("nonempty simplex");
    NelderMeadResult {
        x: simplex[best].clone(),
        value: values[best],
        evals,
        converged,
    }
}
