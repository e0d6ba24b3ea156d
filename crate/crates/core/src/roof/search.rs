//! Upper bounds on the convex-roof tangle by searching over decompositions.

use alloc::format;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{bad_params, Result};
use crate::linalg::{orthonormalize_columns, CMatrix, C64};
use crate::measures::{three_tangle_pure, weighted_tangle};
use crate::roof::hjw::EigenEnsemble;
use crate::roof::nelder_mead::{minimize, NelderMeadOptions};
use crate::states::{DensityMatrix, Ensemble};

const MAX_RANK: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchOptions {
    pub restarts: usize,
    pub seed: u64,
    /// Evaluation budget of one restart.
    pub max_evals: usize,
    /// A restart stops once the simplex is smaller than this.
    pub min_step: f64,
    pub initial_step: f64,
}

impl SearchOptions {
    pub fn new(restarts: usize, seed: u64) -> Self {
        Self {
            restarts,
            seed,
            ..Self::default()
        }
    }
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            restarts: 20,
            seed: 0,
            max_evals: 5000,
            min_step: 1e-7,
            initial_step: 0.3,
        }
    }
}

#[derive(Debug, Clone)]
pub struct DecompositionSearchResult {
    /// Average member tangle of `best_ensemble`.
    pub upper_bound: f64,
    pub best_ensemble: Ensemble,
    pub restarts_used: usize,
    /// Whether the restart that produced the bound stopped on step size.
    pub converged: bool,
    /// Number of members searched over.
    pub m: usize,
    pub evaluations: usize,
}

/// Seed of restart `k`: splitmix64 of the master seed advanced `k + 1` golden-ratio steps.
pub fn derive_seed(master: u64, k: u64) -> u64 {
    let mut z = master.wrapping_add(k.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// `x` packs the real and imaginary parts of an `m x r` matrix, row-major.
fn isometry_from_params(x: &[f64], m: usize, r: usize) -> Option<CMatrix> {
    let mut a = CMatrix::from_fn(m, r, |j, i| {
        let k = 2 * (j * r + i);
        C64::new(x[k], x[k + 1])
    });
    orthonormalize_columns(&mut a).then_some(a)
}

fn objective(eig: &EigenEnsemble, x: &[f64], m: usize) -> f64 {
    let Some(u) = isometry_from_params(x, m, eig.rank()) else {
        return f64::INFINITY;
    };
    (0..m).map(|j| weighted_tangle(&eig.member(&u, j))).sum()
}

struct Restart {
    value: f64,
    x: Vec<f64>,
    converged: bool,
    evals: usize,
}

fn run_restart(eig: &EigenEnsemble, m: usize, opts: &SearchOptions, seed: u64) -> Restart {
    let r = eig.rank();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let x0: Vec<f64> = (0..2 * m * r).map(|_| rng.sample::<f64, _>(StandardNormal)).collect();
    let nm = NelderMeadOptions {
        initial_step: opts.initial_step,
        min_step: opts.min_step,
        max_evals: opts.max_evals,
    };
    let res = minimize(|x| objective(eig, x, m), &x0, nm);
    Restart {
        value: res.value,
        x: res.x,
        converged: res.converged,
        evals: res.evals,
    }
}

fn validate(eig: &EigenEnsemble, m: usize, restarts: usize) -> Result<()> {
    let r = eig.rank();
    if r > MAX_RANK {
        return Err(bad_params(format!("rank {r} exceeds {MAX_RANK}")));
    }
    if m < r || m > 8 {
        return Err(bad_params(format!("m = {m} outside [{r}, 8]")));
    }
    if restarts == 0 {
        return Err(bad_params("need at least one restart"));
    }
    Ok(())
}

/// Best average tangle over `m`-member decompositions of `rho` found by
/// simplex descent from `restarts` random isometries.
pub fn min_avg_tangle(rho: &DensityMatrix, m: usize, restarts: usize, seed: u64) -> Result<DecompositionSearchResult> {
    min_avg_tangle_with(rho, m, &SearchOptions::new(restarts, seed))
}

pub fn min_avg_tangle_with(rho: &DensityMatrix, m: usize, opts: &SearchOptions) -> Result<DecompositionSearchResult> {
    let eig = EigenEnsemble::new(rho)?;
    validate(&eig, m, opts.restarts)?;
    search(&eig, m, opts)
}

fn search(eig: &EigenEnsemble, m: usize, opts: &SearchOptions) -> Result<DecompositionSearchResult> {
    let mut best: Option<Restart> = None;
    let mut evaluations = 0;
    for k in 0..opts.restarts {
        let run = run_restart(eig, m, opts, derive_seed(opts.seed, k as u64));
        evaluations += run.evals;
        // ties go to the earlier restart so the result does not depend on evaluation order
        if best.as_ref().is_none_or(|b| run.value < b.value) {
            best = Some(run);
        }
    }
    let best = best.expect("at least one restart");
    let u = isometry_from_params(&best.x, m, eig.rank()).ok_or_else(|| bad_params("search ended on a degenerate matrix"))?;
    let ensemble = eig.ensemble_from(&u)?;
    Ok(DecompositionSearchResult {
        upper_bound: ensemble.average(|s| three_tangle_pure(s).value()),
        best_ensemble: ensemble,
        restarts_used: opts.restarts,
        converged: best.converged,
        m,
        evaluations,
    })
}

/// [`min_avg_tangle_with`] over `m` in `{rank, rank + 1, rank + 2}` (capped at 8), keeping the lowest bound.
pub fn min_avg_tangle_auto(rho: &DensityMatrix, opts: &SearchOptions) -> Result<DecompositionSearchResult> {
    let eig = EigenEnsemble::new(rho)?;
    let r = eig.rank();
    validate(&eig, r, opts.restarts)?;
    let mut best: Option<DecompositionSearchResult> = None;
    let mut evaluations = 0;
    for m in r..=(r + 2).min(8) {
        let sub = SearchOptions {
            seed: derive_seed(opts.seed, 1000 + m as u64),
            ..*opts
        };
        let res = search(&eig, m, &sub)?;
        evaluations += res.evaluations;
        if best.as_ref().is_none_or(|b| res.upper_bound < b.upper_bound) {
            best = Some(res);
        }
    }
    let mut best = best.expect("at least one size");
    best.evaluations = evaluations;
    Ok(best)
}
