//! Closed-form three-tangle of `rho(p, (1-p)/n)` and its region boundaries.
//!
//! On `[0, p0]` the tangle vanishes, on `[p0, p1]` it is `alpha_I`, the
//! average tangle of the symmetric Z ensemble, and on `[p1, 1]` it is the
//! chord `alpha_II` from `(p1, alpha_I(p1))` to `(1, 1)` tangent to `alpha_I`.
//!
//! Formulas take `(p, n)` with `q = (1-p)/n` substituted, except the CKW
//! quantities [`one_tangle_min`] and [`concurrence_sum_sq`], which take a
//! general `(p, q)`.

use alloc::format;
use alloc::vec::Vec;
use core::fmt;

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{bad_params, Error, Result};
use crate::family::{q_of, validate_n};
use crate::roots::{brent, largest_sign_change, BrentOptions};

const P0_SCAN_CELLS: usize = 2048;
const P0_SCAN_LO: f64 = 0.5;
const EDGE: f64 = 1e-9;
const P_STAR_EDGE: f64 = 1e-6;
const ROOT_RESIDUAL: f64 = 1e-12;
/// Below this distance from `n = 2` the closed form for `p_C` is replaced by a root solve.
const PC_NEAR_TWO: f64 = 1e-3;

fn validate_p(p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(bad_params(format!("p = {p} outside [0, 1]")))
    }
}

/// Coefficients of `alpha_I(p) = p^2 - a p(1-p) - b (1-p)^2 - c sqrt(p (1-p)^3)`.
#[derive(Debug, Clone, Copy)]
struct AlphaCoefs {
    a: f64,
    b: f64,
    c: f64,
}

impl AlphaCoefs {
    fn new(n: f64) -> Self {
        let m = n - 1.0;
        Self {
            a: 4.0 * m.sqrt() / n,
            b: 4.0 * m / (3.0 * n * n),
            c: 8.0 * (6.0 * n).sqrt() * (1.0 + m.powf(1.5)) / (9.0 * n * n),
        }
    }

    fn alpha(&self, p: f64) -> f64 {
        let s = 1.0 - p;
        p * p - self.a * p * s - self.b * s * s - self.c * (p * s * s * s).sqrt()
    }

    fn alpha_dd(&self, p: f64) -> f64 {
        2.0 + 2.0 * self.a - 2.0 * self.b - self.c * (8.0 * p * p - 4.0 * p - 1.0) / (4.0 * (p * p * p * (1.0 - p)).sqrt())
    }

    /// Optimality condition for the chord start `p1`.
    fn p1_condition(&self, p: f64) -> f64 {
        self.c / 2.0 * (2.0 * p - 1.0) / (p * (1.0 - p)).sqrt() - (1.0 + self.a - self.b)
    }
}

/// Average tangle of the symmetric Z ensemble of `rho(p, (1-p)/n)`.
pub fn alpha_i(p: f64, n: f64) -> Result<f64> {
    validate_p(p)?;
    validate_n(n)?;
    Ok(AlphaCoefs::new(n).alpha(p))
}

/// Second derivative of [`alpha_i`] in `p`; singular at `p = 0` and `p = 1`.
pub fn alpha_i_dd(p: f64, n: f64) -> Result<f64> {
    if !(p > 0.0 && p < 1.0) {
        return Err(bad_params(format!("second derivative needs 0 < p < 1, got {p}")));
    }
    validate_n(n)?;
    Ok(AlphaCoefs::new(n).alpha_dd(p))
}

/// Chord from `(p1, alpha_I(p1))` to `(1, 1)`.
pub fn alpha_ii(p: f64, n: f64, p1: f64) -> Result<f64> {
    validate_p(p)?;
    validate_n(n)?;
    if !(p1 < 1.0) {
        return Err(bad_params(format!("p1 = {p1} must be < 1")));
    }
    let a1 = AlphaCoefs::new(n).alpha(p1);
    Ok((p - p1) / (1.0 - p1) + (1.0 - p) / (1.0 - p1) * a1)
}

fn check_residual(value: f64, what: &'static str) -> Result<()> {
    if value.abs() <= ROOT_RESIDUAL {
        Ok(())
    } else {
        Err(Error::NoRoot(what))
    }
}

/// Largest zero of `alpha_I` in `(1/2, 1)`: the onset of nonzero tangle.
pub fn solve_p0(n: f64) -> Result<f64> {
    validate_n(n)?;
    let co = AlphaCoefs::new(n);
    let (lo, hi) = largest_sign_change(|p| co.alpha(p), P0_SCAN_LO, 1.0 - EDGE, P0_SCAN_CELLS).ok_or(Error::NoRoot("p0"))?;
    let root = brent(|p| co.alpha(p), lo, hi, BrentOptions::default(), "p0")?;
    check_residual(co.alpha(root), "p0")?;
    Ok(root)
}

/// Zero of the `p1` optimality condition in `(1/2, 1)`.
pub fn solve_p1(n: f64) -> Result<f64> {
    validate_n(n)?;
    let co = AlphaCoefs::new(n);
    let root = brent(|p| co.p1_condition(p), 0.5 + EDGE, 1.0 - EDGE, BrentOptions::default(), "p1")?;
    // the condition blows up like 1/sqrt(1-p); scale the residual test accordingly
    check_residual(co.p1_condition(root) * (root * (1.0 - root)).sqrt(), "p1")?;
    Ok(root)
}

/// Zero of `alpha_I''` above `p0`; `alpha_I` is concave beyond it.
pub fn solve_p_star(n: f64) -> Result<f64> {
    let p0 = solve_p0(n)?;
    solve_p_star_above(n, p0)
}

fn solve_p_star_above(n: f64, p0: f64) -> Result<f64> {
    let co = AlphaCoefs::new(n);
    let root = brent(|p| co.alpha_dd(p), p0, 1.0 - P_STAR_EDGE, BrentOptions::default(), "p_star")?;
    check_residual(co.alpha_dd(root) * (root * root * root * (1.0 - root)).sqrt(), "p_star")?;
    Ok(root)
}

/// `(2/3)(1-p) - (1/3) sqrt((3p + 2q)(2 + p - 2q))`; the pairwise concurrence
/// of `rho(p, q)` is the positive part of this.
fn concurrence_core(p: f64, q: f64) -> f64 {
    2.0 / 3.0 * (1.0 - p) - ((3.0 * p + 2.0 * q) * (2.0 + p - 2.0 * q)).max(0.0).sqrt() / 3.0
}

/// Point where both pairwise concurrences of `rho(p, (1-p)/n)` vanish.
pub fn p_c(n: f64) -> Result<f64> {
    validate_n(n)?;
    if (n - 2.0).abs() < PC_NEAR_TWO {
        return p_c_by_root(n);
    }
    let num = (7.0 * n * n - 4.0 * n + 4.0) - 3.0 * n * (5.0 * n * n - 4.0 * n + 4.0).sqrt();
    Ok(num / ((n - 2.0) * (n - 2.0)))
}

fn p_c_by_root(n: f64) -> Result<f64> {
    brent(|p| concurrence_core(p, q_of(p, n)), 0.0, 1.0, BrentOptions::default(), "p_c")
}

/// Region boundaries for one value of `n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Thresholds {
    pub n: f64,
    pub p0: f64,
    pub p1: f64,
    pub p_star: f64,
    pub p_c: f64,
}

impl Thresholds {
    pub fn compute(n: f64) -> Result<Self> {
        let p0 = solve_p0(n)?;
        Ok(Self {
            n,
            p0,
            p1: solve_p1(n)?,
            p_star: solve_p_star_above(n, p0)?,
            p_c: p_c(n)?,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Region {
    Zero,
    AlphaI,
    AlphaII,
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Region::Zero => "ZERO",
            Region::AlphaI => "ALPHA_I",
            Region::AlphaII => "ALPHA_II",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PiecewiseTangle {
    pub region: Region,
    pub value: f64,
}

/// Three-tangle of `rho(p, (1-p)/n)`.
pub fn mixed_three_tangle(p: f64, n: f64, th: &Thresholds) -> Result<PiecewiseTangle> {
    validate_p(p)?;
    validate_n(n)?;
    if (th.n - n).abs() > 1e-12 {
        return Err(bad_params(format!("thresholds computed for n = {}, not {n}", th.n)));
    }
    Ok(if p <= th.p0 {
        PiecewiseTangle {
            region: Region::Zero,
            value: 0.0,
        }
    } else if p <= th.p1 {
        PiecewiseTangle {
            region: Region::AlphaI,
            value: AlphaCoefs::new(n).alpha(p).max(0.0),
        }
    } else {
        PiecewiseTangle {
            region: Region::AlphaII,
            value: alpha_ii(p, n, th.p1)?,
        }
    })
}

fn validate_pq(p: f64, q: f64) -> Result<()> {
    validate_p(p)?;
    if !(q >= 0.0 && p + q <= 1.0 + 1e-12) {
        return Err(bad_params(format!("q = {q} outside [0, 1 - p]")));
    }
    Ok(())
}

/// Minimum over decompositions of the average one-tangle of qubit A for `rho(p, q)`.
pub fn one_tangle_min(p: f64, q: f64) -> Result<f64> {
    validate_pq(p, q)?;
    let r = (1.0 - p - q).max(0.0);
    let poly = 8.0 - 4.0 * p - 12.0 * q + 5.0 * p * p + 12.0 * q * q + 12.0 * p * q;
    let cross = 4.0 * (p * q * r).sqrt() * (2.0 * (6.0 * q).sqrt() + 2.0 * (6.0 * r).sqrt() - 3.0 * p.sqrt());
    Ok((poly + cross) / 9.0)
}

/// `C_AB^2 + C_AC^2` for `rho(p, q)`.
pub fn concurrence_sum_sq(p: f64, q: f64) -> Result<f64> {
    validate_pq(p, q)?;
    let c = concurrence_core(p, q).max(0.0);
    Ok(2.0 * c * c)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CkwPoint {
    pub p: f64,
    pub one_tangle: f64,
    pub conc_sq_sum: f64,
    pub tau3: f64,
    /// `one_tangle - conc_sq_sum - tau3`
    pub margin: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CkwReport {
    pub n: f64,
    pub points: Vec<CkwPoint>,
    pub min_margin: f64,
}

/// Evaluates the residual-tangle inequality on a uniform `p` grid over `[0, 1]`.
pub fn ckw_audit(n: f64, grid_size: usize) -> Result<CkwReport> {
    if grid_size < 2 {
        return Err(bad_params("grid needs at least two points"));
    }
    let th = Thresholds::compute(n)?;
    ckw_audit_with(&th, grid_size)
}

pub fn ckw_audit_with(th: &Thresholds, grid_size: usize) -> Result<CkwReport> {
    if grid_size < 2 {
        return Err(bad_params("grid needs at least two points"));
    }
    let n = th.n;
    let mut points = Vec::with_capacity(grid_size);
    for k in 0..grid_size {
        let p = k as f64 / (grid_size - 1) as f64;
        let q = q_of(p, n);
        let one_tangle = one_tangle_min(p, q)?;
        let conc_sq_sum = concurrence_sum_sq(p, q)?;
        let tau3 = mixed_three_tangle(p, n, th)?.value;
        points.push(CkwPoint {
            p,
            one_tangle,
            conc_sq_sum,
            tau3,
            margin: one_tangle - conc_sq_sum - tau3,
        });
    }
    let min_margin = points.iter().map(|pt| pt.margin).fold(f64::INFINITY, f64::min);
    Ok(CkwReport { n, points, min_margin })
}
