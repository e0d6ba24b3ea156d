use alloc::vec::Vec;

use crate::error::{bad_params, Error, Result};
use crate::roof::curve::CharCurve;

/// Points within this distance of collinear stay on the hull.
const COLLINEAR_TOL: f64 = 1e-12;

/// Piecewise-linear convex function through the lower-hull vertices.
#[derive(Debug, Clone, PartialEq)]
pub struct Envelope {
    vertices: Vec<(f64, f64)>,
}

impl Envelope {
    pub fn vertices(&self) -> &[(f64, f64)] {
        &self.vertices
    }

    /// Linear interpolation between hull vertices; `None` outside the sampled range.
    pub fn eval(&self, x: f64) -> Option<f64> {
        let first = self.vertices.first()?;
        let last = self.vertices.last()?;
        if !(x >= first.0 && x <= last.0) {
            return None;
        }
        let k = self.vertices.partition_point(|v| v.0 < x);
        if k == 0 {
            return Some(first.1);
        }
        let (x0, y0) = self.vertices[k - 1];
        let (x1, y1) = self.vertices[k];
        if x1 == x0 {
            return Some(y0.min(y1));
        }
        Some(y0 + (y1 - y0) * (x - x0) / (x1 - x0))
    }

    /// `(x, f(x))` at each of `xs` inside the range.
    pub fn sample(&self, xs: &[f64]) -> Vec<(f64, f64)> {
        xs.iter().filter_map(|&x| self.eval(x).map(|y| (x, y))).collect()
    }
}

fn cross(a: (f64, f64), b: (f64, f64), c: (f64, f64)) -> f64 {
    (b.0 - a.0) * (c.1 - a.1) - (b.1 - a.1) * (c.0 - a.0)
}

/// Greatest convex function lying on or below every sample (monotone-chain lower hull).
pub fn lower_convex_envelope(points: &[(f64, f64)]) -> Result<Envelope> {
    if points.is_empty() {
        return Err(Error::EmptyInput);
    }
    if points.len() < 2 {
        return Err(bad_params("envelope needs at least two points"));
    }
    if points.windows(2).any(|w| !(w[1].0 > w[0].0)) {
        return Err(bad_params("x values must be strictly increasing"));
    }
    let mut hull: Vec<(f64, f64)> = Vec::with_capacity(points.len());
    for &c in points {
        while hull.len() >= 2 {
            let a = hull[hull.len() - 2];
            let b = hull[hull.len() - 1];
            if cross(a, b, c) < -COLLINEAR_TOL {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(c);
    }
    Ok(Envelope { vertices: hull })
}

/// Envelope of a characteristic curve seen as a convex-roof bound for
/// `rho(p, (1-p)/n)`.
///
/// At `p = 0` the state is the W / W~ mixture, which is already a mixture of
/// zero-tangle pure states, so that endpoint enters with tangle 0 instead of
/// the Z-state minimum (which is positive there for `n > 1`).
pub fn roof_envelope(curve: &CharCurve) -> Result<Envelope> {
    let mut pts = curve.points_xy();
    if let Some(first) = pts.first_mut() {
        if first.0 == 0.0 {
            first.1 = 0.0;
        }
    }
    lower_convex_envelope(&pts)
}
