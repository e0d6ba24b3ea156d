//! Minimum of the Z-state tangle over both phases, sampled in `p`.

use alloc::vec::Vec;
use core::f64::consts::PI;

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{bad_params, Result};
use crate::family::{q_of, validate_n};
use crate::linalg::C64;
use crate::roof::nelder_mead::{minimize, NelderMeadOptions};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CurveOptions {
    pub p_points: usize,
    pub phi_points: usize,
    /// Number of best grid cells handed to local refinement.
    pub refine_starts: usize,
}

impl Default for CurveOptions {
    fn default() -> Self {
        Self {
            p_points: 401,
            phi_points: 64,
            refine_starts: 3,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CharPoint {
    pub p: f64,
    pub tau_min: f64,
    /// Phases in `[0, 2 pi)` at which the minimum was found.
    pub phi1: f64,
    pub phi2: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CharCurve {
    pub n: f64,
    pub points: Vec<CharPoint>,
}

impl CharCurve {
    pub fn points_xy(&self) -> Vec<(f64, f64)> {
        self.points.iter().map(|c| (c.p, c.tau_min)).collect()
    }

    /// Largest `p` with `tau_min` at most `tol`.
    pub fn largest_zero(&self, tol: f64) -> Option<&CharPoint> {
        self.points.iter().rev().find(|c| c.tau_min <= tol)
    }
}

/// Magnitudes of the five monomials of the closed-form Z tangle at fixed `(p, q)`.
#[derive(Debug, Clone, Copy)]
struct Monomials {
    k0: f64,
    k1: f64,
    k2: f64,
    k3: f64,
    k4: f64,
}

impl Monomials {
    fn new(p: f64, q: f64) -> Self {
        let r = (1.0 - p - q).max(0.0);
        let k = 8.0 * 6.0_f64.sqrt() / 9.0;
        Self {
            k0: p * p,
            k1: 4.0 * p * (q * r).sqrt(),
            k2: 4.0 / 3.0 * q * r,
            k3: k * (p * q * q * q).sqrt(),
            k4: k * (p * r * r * r).sqrt(),
        }
    }

    fn with_phasors(&self, s1: C64, s2: C64, t1: C64, t2: C64) -> f64 {
        (C64::new(self.k0, 0.0) - s1 * self.k1 - s2 * self.k2 - t1 * self.k3 - t2 * self.k4).norm()
    }

    fn eval(&self, phi1: f64, phi2: f64) -> f64 {
        let e = |t: f64| C64::new(t.cos(), t.sin());
        let s = phi1 + phi2;
        self.with_phasors(e(s), e(2.0 * s), e(3.0 * phi1), e(3.0 * phi2))
    }
}

fn wrap(phi: f64) -> f64 {
    let t = num_traits::Euclid::rem_euclid(&phi, &(2.0 * PI));
    if t >= 2.0 * PI {
        0.0
    } else {
        t
    }
}

/// Uniform `p` grid on `[0, 1]`, uniform `phi_points x phi_points` phase grid,
/// then simplex refinement of the best cells to `1e-8` in phase.
pub fn characteristic_curve(n: f64, p_points: usize, phi_points: usize) -> Result<CharCurve> {
    characteristic_curve_with(
        n,
        CurveOptions {
            p_points,
            phi_points,
            ..CurveOptions::default()
        },
    )
}

pub fn characteristic_curve_with(n: f64, opts: CurveOptions) -> Result<CharCurve> {
    validate_n(n)?;
    if opts.p_points < 2 {
        return Err(bad_params("need at least two p points"));
    }
    if opts.phi_points < 4 {
        return Err(bad_params("need at least four phase points"));
    }
    let np = opts.phi_points;
    let step = 2.0 * PI / np as f64;
    let table: Vec<C64> = (0..np)
        .map(|k| C64::new((k as f64 * step).cos(), (k as f64 * step).sin()))
        .collect();
    let nm = NelderMeadOptions {
        initial_step: 0.5 * step,
        min_step: 1e-8,
        max_evals: 2000,
    };

    let mut points = Vec::with_capacity(opts.p_points);
    let mut cells: Vec<(f64, usize, usize)> = Vec::with_capacity(np * np);
    for i in 0..opts.p_points {
        let p = if i + 1 == opts.p_points {
            1.0
        } else {
            i as f64 / (opts.p_points - 1) as f64
        };
        let mono = Monomials::new(p, q_of(p, n));

        cells.clear();
        for k1 in 0..np {
            for k2 in 0..np {
                let v = mono.with_phasors(
                    table[(k1 + k2) % np],
                    table[(2 * (k1 + k2)) % np],
                    table[(3 * k1) % np],
                    table[(3 * k2) % np],
                );
                cells.push((v, k1, k2));
            }
        }
        let keep = opts.refine_starts.clamp(1, cells.len());
        cells.select_nth_unstable_by(keep - 1, |a, b| a.0.total_cmp(&b.0));
        cells[..keep].sort_by(|a, b| a.0.total_cmp(&b.0).then((a.1, a.2).cmp(&(b.1, b.2))));

        let (v0, k1, k2) = cells[0];
        let mut best = CharPoint {
            p,
            tau_min: v0,
            phi1: k1 as f64 * step,
            phi2: k2 as f64 * step,
        };
        for &(_, k1, k2) in &cells[..keep] {
            let r = minimize(|x| mono.eval(x[0], x[1]), &[k1 as f64 * step, k2 as f64 * step], nm);
            if r.value < best.tau_min {
                best.tau_min = r.value;
                best.phi1 = wrap(r.x[0]);
                best.phi2 = wrap(r.x[1]);
            }
        }
        best.tau_min = best.tau_min.clamp(0.0, 1.0);
        points.push(best);
    }
    Ok(CharCurve { n, points })
}
