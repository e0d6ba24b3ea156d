//! Three-tangle, Wootters concurrence and one-tangle.

use crate::error::{Error, Result};
use crate::linalg::{pivoted_cholesky, singular_values, CMatrix, C64};
use crate::states::{partial_trace, DensityMatrix, PureState3, Qubit, QubitPair};

/// A three-tangle in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct TangleValue(f64);

impl TangleValue {
    pub const UPPER_TOL: f64 = 1e-10;

    pub fn new(value: f64) -> Result<Self> {
        if (0.0..=1.0 + Self::UPPER_TOL).contains(&value) {
            Ok(Self(value))
        } else {
            Err(Error::BadParams(alloc::format!("tangle {value} outside [0, 1]")))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

impl From<TangleValue> for f64 {
    fn from(t: TangleValue) -> f64 {
        t.0
    }
}

/// Cayley hyperdeterminant `d1 - 2 d2 + 4 d3` of the amplitude tensor `a_ijk`
/// (no normalisation assumed).
pub fn hyperdeterminant(a: &[C64; 8]) -> C64 {
    let x = |i: usize, j: usize, k: usize| a[4 * i + 2 * j + k];
    let (a000, a001, a010, a011) = (x(0, 0, 0), x(0, 0, 1), x(0, 1, 0), x(0, 1, 1));
    let (a100, a101, a110, a111) = (x(1, 0, 0), x(1, 0, 1), x(1, 1, 0), x(1, 1, 1));

    let d1 = a000 * a000 * a111 * a111 + a001 * a001 * a110 * a110 + a010 * a010 * a101 * a101 + a100 * a100 * a011 * a011;
    let d2 = a000 * a111 * a011 * a100
        + a000 * a111 * a101 * a010
        + a000 * a111 * a110 * a001
        + a011 * a100 * a101 * a010
        + a011 * a100 * a110 * a001
        + a101 * a010 * a110 * a001;
    let d3 = a000 * a110 * a101 * a011 + a111 * a001 * a010 * a100;
    d1 - d2 * 2.0 + d3 * 4.0
}

/// `tau_3 = 4 |d1 - 2 d2 + 4 d3|`
pub fn three_tangle_pure(psi: &PureState3) -> TangleValue {
    let t = 4.0 * hyperdeterminant(psi.amplitudes()).norm();
    TangleValue(t.min(1.0 + TangleValue::UPPER_TOL))
}

/// Three-tangle of the normalised direction of an unnormalised vector, times
/// its squared norm. This is the contribution of one member of a
/// subnormalised ensemble `{|psi~_j>}` to the average tangle.
pub(crate) fn weighted_tangle(v: &[C64; 8]) -> f64 {
    let n2: f64 = v.iter().map(|a| a.norm_sqr()).sum();
    if n2 <= f64::MIN_POSITIVE {
        return 0.0;
    }
    4.0 * hyperdeterminant(v).norm() / n2
}

/// `Y (x) Y`, real and symmetric.
fn spin_flip() -> CMatrix {
    let mut yy = CMatrix::zeros(4, 4);
    yy[(0, 3)] = C64::new(-1.0, 0.0);
    yy[(3, 0)] = C64::new(-1.0, 0.0);
    yy[(1, 2)] = C64::new(1.0, 0.0);
    yy[(2, 1)] = C64::new(1.0, 0.0);
    yy
}

/// Concurrence from any factor `V` with `rho = V V^H`.
///
/// The Wootters values `lambda_i` (square roots of the eigenvalues of
/// `rho (Y(x)Y) rho* (Y(x)Y)`) are the singular values of `V^T (Y(x)Y) V`.
pub fn concurrence_from_factor(v: &CMatrix) -> f64 {
    if v.cols() == 0 {
        return 0.0;
    }
    let t = &(&v.transpose() * &spin_flip()) * v;
    let mut lambda = singular_values(&t);
    lambda.resize(4, 0.0);
    (lambda[0] - lambda[1] - lambda[2] - lambda[3]).max(0.0)
}

/// Pivots below this fraction of the trace are treated as roundoff.
const FACTOR_DROP: f64 = 1e-13;

/// Wootters concurrence of a two-qubit density matrix.
pub fn concurrence(rho: &DensityMatrix) -> Result<f64> {
    if rho.dim() != 4 {
        return Err(Error::BadDimension {
            expected: 4,
            got: rho.dim(),
        });
    }
    let v = pivoted_cholesky(rho.matrix(), FACTOR_DROP);
    Ok(concurrence_from_factor(&v).min(1.0))
}

/// `4 det(rho_focus)`
pub fn one_tangle_pure(psi: &PureState3, focus: Qubit) -> f64 {
    let reduced = partial_trace(&psi.projector(), focus).expect("projector is 8x8");
    (4.0 * reduced.determinant_2x2().expect("2x2")).clamp(0.0, 1.0)
}

/// `4 det(rho_A) - C_AB^2 - C_AC^2`, equal to the three-tangle for pure states.
pub fn ckw_residual(psi: &PureState3) -> f64 {
    let c_ab = concurrence_from_factor(&psi.pair_factor(QubitPair::AB)).min(1.0);
    let c_ac = concurrence_from_factor(&psi.pair_factor(QubitPair::AC)).min(1.0);
    one_tangle_pure(psi, Qubit::A) - c_ab * c_ab - c_ac * c_ac
}
