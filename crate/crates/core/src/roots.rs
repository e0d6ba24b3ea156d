//! Bracketed root finding (Brent's method) and sign-change scanning.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy)]
pub struct BrentOptions {
    pub xtol: f64,
    pub max_iter: usize,
}

impl Default for BrentOptions {
    fn default() -> Self {
        Self {
            xtol: 1e-14,
            max_iter: 200,
        }
    }
}

/// Root of `f` in `[a, b]`, which must bracket a sign change.
///
/// Inverse quadratic interpolation and secant steps, falling back to
/// bisection whenever they would not shrink the bracket fast enough.
pub fn brent<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, opts: BrentOptions, what: &'static str) -> Result<f64> {
    let (mut a, mut b) = (a, b);
    let (mut fa, mut fb) = (f(a), f(b));
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if !(fa.signum() != fb.signum()) || fa.is_nan() || fb.is_nan() {
        return Err(Error::NoRoot(what));
    }
    if fa.abs() < fb.abs() {
        core::mem::swap(&mut a, &mut b);
        core::mem::swap(&mut fa, &mut fb);
    }
    let (mut c, mut fc) = (a, fa);
    let mut d = b - a;
    let mut bisected = true;

    for _ in 0..opts.max_iter {
        if fb == 0.0 || (b - a).abs() <= opts.xtol {
            return Ok(b);
        }
        let mut s = if fa != fc && fb != fc {
            a * fb * fc / ((fa - fb) * (fa - fc)) + b * fa * fc / ((fb - fa) * (fb - fc)) + c * fa * fb / ((fc - fa) * (fc - fb))
        } else {
            b - fb * (b - a) / (fb - fa)
        };
        let lo = (3.0 * a + b) / 4.0;
        let outside = !((s > lo.min(b)) && (s < lo.max(b)));
        let slow = if bisected {
            (s - b).abs() >= (b - c).abs() / 2.0 || (b - c).abs() < opts.xtol
        } else {
            (s - b).abs() >= (c - d).abs() / 2.0 || (c - d).abs() < opts.xtol
        };
        if outside || slow {
            s = (a + b) / 2.0;
            bisected = true;
        } else {
            bisected = false;
        }
        let fs = f(s);
        d = c;
        c = b;
        fc = fb;
        if fa.signum() != fs.signum() {
            b = s;
            fb = fs;
        } else {
            a = s;
            fa = fs;
        }
        if fa.abs() < fb.abs() {
            core::mem::swap(&mut a, &mut b);
            core::mem::swap(&mut fa, &mut fb);
        }
    }
    Ok(b)
}

/// Scans `cells` uniform subintervals from `hi` down to `lo` and returns the
/// first (largest-x) bracket `(left, right)` across which `f` changes sign.
pub fn largest_sign_change<F: FnMut(f64) -> f64>(mut f: F, lo: f64, hi: f64, cells: usize) -> Option<(f64, f64)> {
    let h = (hi - lo) / cells as f64;
    let mut right = hi;
    let mut f_right = f(right);
    for k in 1..=cells {
        let left = if k == cells { lo } else { hi - h * k as f64 };
        let f_left = f(left);
        if f_right == 0.0 {
            return Some((right, right));
        }
        if f_left.signum() != f_right.signum() || f_left == 0.0 {
            return Some((left, right));
        }
        right = left;
        f_right = f_left;
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_simple_roots() {
        let r = brent(|x| x * x - 2.0, 0.0, 2.0, BrentOptions::default(), "sqrt2").unwrap();
        assert!((r - 2.0_f64.sqrt()).abs() < 1e-14);
        let r = brent(|x| x.cos() - x, 0.0, 1.0, BrentOptions::default(), "dottie").unwrap();
        assert!((r - 0.739_085_133_215_160_6).abs() < 1e-14);
        let r = brent(|x| (x - 1.0).powi(3), -3.0, 2.0, BrentOptions::default(), "triple").unwrap();
        assert!((r - 1.0).abs() < 1e-4);
    }

    #[test]
    fn reports_missing_bracket() {
        assert_eq!(
            brent(|x| x * x + 1.0, -1.0, 1.0, BrentOptions::default(), "none"),
            Err(Error::NoRoot("none"))
        );
    }

    #[test]
    fn root_at_endpoint() {
        assert_eq!(brent(|x| x - 1.0, 1.0, 3.0, BrentOptions::default(), "end").unwrap(), 1.0);
    }

    #[test]
    fn scan_picks_largest_crossing() {
        // roots at 0.2, 0.5, 0.8
        let f = |x: f64| (x - 0.2) * (x - 0.5) * (x - 0.8);
        let (l, r) = largest_sign_change(f, 0.0, 1.0, 64).unwrap();
        assert!(l <= 0.8 && 0.8 <= r);
        assert!(largest_sign_change(|x| x + 2.0, 0.0, 1.0, 16).is_none());
    }
}
