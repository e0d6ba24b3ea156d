//! Pure states, density matrices, ensembles and partial traces.
//!
//! Qubit order is big-endian: basis index `4*i + 2*j + k` is `|ijk>` with
//! qubit A = i, B = j, C = k.

use alloc::format;
use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::linalg::{CMatrix, C64, ZERO};

pub const HERMITIAN_TOL: f64 = 1e-12;
pub const TRACE_TOL: f64 = 1e-12;
pub const PSD_FLOOR: f64 = -1e-10;
const ZERO_NORM: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Qubit {
    A,
    B,
    C,
}

impl Qubit {
    fn position(self) -> usize {
        match self {
            Qubit::A => 0,
            Qubit::B => 1,
            Qubit::C => 2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QubitPair {
    AB,
    AC,
    BC,
}

impl QubitPair {
    fn positions(self) -> (usize, usize) {
        match self {
            QubitPair::AB => (0, 1),
            QubitPair::AC => (0, 2),
            QubitPair::BC => (1, 2),
        }
    }
}

#[inline]
fn bit(index: usize, position: usize) -> usize {
    (index >> (2 - position)) & 1
}

/// Normalised three-qubit pure state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PureState3 {
    amps: [C64; 8],
}

impl PureState3 {
    pub fn from_amplitudes(amps: [C64; 8]) -> Result<Self> {
        let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if !(norm > ZERO_NORM) {
            return Err(Error::ZeroVector);
        }
        Ok(Self {
            amps: amps.map(|a| a / norm),
        })
    }

    pub fn from_real(amps: [f64; 8]) -> Result<Self> {
        Self::from_amplitudes(amps.map(|a| C64::new(a, 0.0)))
    }

    /// `|ijk>`
    pub fn basis(i: usize, j: usize, k: usize) -> Self {
        let mut amps = [ZERO; 8];
        amps[4 * (i & 1) + 2 * (j & 1) + (k & 1)] = C64::new(1.0, 0.0);
        Self { amps }
    }

    /// `|a> (x) |b> (x) |c>` for single-qubit amplitude pairs.
    pub fn product(a: [C64; 2], b: [C64; 2], c: [C64; 2]) -> Result<Self> {
        let mut amps = [ZERO; 8];
        for (idx, amp) in amps.iter_mut().enumerate() {
            *amp = a[bit(idx, 0)] * b[bit(idx, 1)] * c[bit(idx, 2)];
        }
        Self::from_amplitudes(amps)
    }

    pub fn amplitudes(&self) -> &[C64; 8] {
        &self.amps
    }

    /// `a_ijk`
    pub fn amp(&self, i: usize, j: usize, k: usize) -> C64 {
        self.amps[4 * i + 2 * j + k]
    }

    /// `<self|other>`
    pub fn inner(&self, other: &Self) -> C64 {
        self.amps.iter().zip(&other.amps).map(|(a, b)| a.conj() * b).sum()
    }

    pub fn projector(&self) -> DensityMatrix {
        DensityMatrix::from_matrix_unchecked(CMatrix::outer(&self.amps, &self.amps))
    }

    /// Applies `u_a (x) u_b (x) u_c`, each a row-major 2x2 matrix.
    pub fn apply_local(&self, u: [[C64; 4]; 3]) -> Self {
        let mut out = [ZERO; 8];
        for (row, o) in out.iter_mut().enumerate() {
            for (col, &a) in self.amps.iter().enumerate() {
                let mut f = a;
                for (q, uq) in u.iter().enumerate() {
                    f *= uq[2 * bit(row, q) + bit(col, q)];
                }
                *o += f;
            }
        }
        Self { amps: out }
    }

    /// Relabels qubits: qubit `perm[q]` of the result is qubit `q` of `self`.
    pub fn permute_qubits(&self, perm: [usize; 3]) -> Self {
        let mut out = [ZERO; 8];
        for (idx, &a) in self.amps.iter().enumerate() {
            let mut bits = [0usize; 3];
            for q in 0..3 {
                bits[perm[q]] = bit(idx, q);
            }
            out[4 * bits[0] + 2 * bits[1] + bits[2]] = a;
        }
        Self { amps: out }
    }

    /// Reduced state of qubit pair `(first, second)` as a rank <= 2 factor:
    /// the columns `psi[.., .., c]` over the traced qubit.
    pub(crate) fn pair_factor(&self, pair: QubitPair) -> CMatrix {
        let (q1, q2) = pair.positions();
        let traced = 3 - q1 - q2;
        let mut f = CMatrix::zeros(4, 2);
        for (idx, &a) in self.amps.iter().enumerate() {
            let row = 2 * bit(idx, q1) + bit(idx, q2);
            f[(row, bit(idx, traced))] = a;
        }
        f
    }
}

/// Hermitian, unit-trace, positive semidefinite matrix of dimension 2, 3, 4 or 8.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    m: CMatrix,
}

impl DensityMatrix {
    pub fn new(m: CMatrix) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::BadDimension {
                expected: m.rows(),
                got: m.cols(),
            });
        }
        if !matches!(m.rows(), 2 | 3 | 4 | 8) {
            return Err(Error::BadDimension {
                expected: 8,
                got: m.rows(),
            });
        }
        let herm = m.hermiticity_defect();
        if !(herm <= HERMITIAN_TOL) {
            return Err(Error::InvalidDensity(format!("hermiticity defect {herm:e}")));
        }
        let tr = m.trace();
        if !((tr.re - 1.0).abs() <= TRACE_TOL && tr.im.abs() <= TRACE_TOL) {
            return Err(Error::InvalidDensity(format!("trace {} {}i", tr.re, tr.im)));
        }
        let lowest = m.hermitian_eigen().values[0];
        if lowest < PSD_FLOOR {
            return Err(Error::InvalidDensity(format!("eigenvalue {lowest:e}")));
        }
        Ok(Self { m })
    }

    /// Trusted constructions (projectors, convex mixtures) skip the eigen check.
    pub(crate) fn from_matrix_unchecked(m: CMatrix) -> Self {
        debug_assert!(m.is_square());
        Self { m }
    }

    pub fn dim(&self) -> usize {
        self.m.rows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.m
    }

    pub fn into_matrix(self) -> CMatrix {
        self.m
    }

    pub fn eigen(&self) -> crate::linalg::HermitianEigen {
        self.m.hermitian_eigen()
    }

    /// Number of eigenvalues above `tol`.
    pub fn rank(&self, tol: f64) -> usize {
        self.eigen().values.iter().filter(|&&l| l > tol).count()
    }

    pub fn determinant_2x2(&self) -> Result<f64> {
        if self.dim() != 2 {
            return Err(Error::BadDimension {
                expected: 2,
                got: self.dim(),
            });
        }
        let m = &self.m;
        Ok((m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)]).re)
    }

    /// `U rho U^H`
    pub fn conjugate_by(&self, u: &CMatrix) -> Self {
        Self::from_matrix_unchecked(&(u * &self.m) * &u.adjoint())
    }

    /// `sum_k w_k rho_k`; callers guarantee the weights form a probability vector.
    pub fn mixture(parts: &[(f64, &DensityMatrix)]) -> Result<Self> {
        let dim = parts.first().ok_or(Error::EmptyInput)?.1.dim();
        let mut m = CMatrix::zeros(dim, dim);
        for (w, rho) in parts {
            if rho.dim() != dim {
                return Err(Error::BadDimension {
                    expected: dim,
                    got: rho.dim(),
                });
            }
            m = &m + &rho.m.scale(*w);
        }
        Self::new(m)
    }
}

/// Weighted list of pure states.
#[derive(Debug, Clone, PartialEq)]
pub struct Ensemble {
    members: Vec<(f64, PureState3)>,
}

impl Ensemble {
    pub fn new(members: Vec<(f64, PureState3)>) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::EmptyInput);
        }
        if let Some((w, _)) = members.iter().find(|(w, _)| !(*w >= 0.0 && *w <= 1.0 + TRACE_TOL)) {
            return Err(Error::BadParams(format!("ensemble weight {w} outside [0, 1]")));
        }
        let total: f64 = members.iter().map(|(w, _)| w).sum();
        if (total - 1.0).abs() > TRACE_TOL {
            return Err(Error::BadParams(format!("ensemble weights sum to {total}")));
        }
        Ok(Self { members })
    }

    pub fn members(&self) -> &[(f64, PureState3)] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Weight-averaged value of a pure-state function.
    pub fn average(&self, mut f: impl FnMut(&PureState3) -> f64) -> f64 {
        self.members.iter().map(|(w, s)| w * f(s)).sum()
    }
}

pub fn pure_from_amplitudes(amps: [C64; 8]) -> Result<PureState3> {
    PureState3::from_amplitudes(amps)
}

/// `sum_i w_i |psi_i><psi_i|`
pub fn density_from_ensemble(ens: &Ensemble) -> DensityMatrix {
    let mut m = CMatrix::zeros(8, 8);
    for (w, s) in ens.members() {
        m.add_projector(*w, s.amplitudes());
    }
    DensityMatrix::from_matrix_unchecked(m)
}

fn require_three_qubits(rho: &DensityMatrix) -> Result<()> {
    if rho.dim() != 8 {
        return Err(Error::BadDimension {
            expected: 8,
            got: rho.dim(),
        });
    }
    Ok(())
}

pub fn partial_trace(rho: &DensityMatrix, keep: Qubit) -> Result<DensityMatrix> {
    require_three_qubits(rho)?;
    let q = keep.position();
    let m = rho.matrix();
    let mut out = CMatrix::zeros(2, 2);
    for r in 0..8 {
        for c in 0..8 {
            let same_rest = (0..3).filter(|&x| x != q).all(|x| bit(r, x) == bit(c, x));
            if same_rest {
                out[(bit(r, q), bit(c, q))] += m[(r, c)];
            }
        }
    }
    Ok(DensityMatrix::from_matrix_unchecked(out))
}

pub fn partial_trace_pair(rho: &DensityMatrix, keep: QubitPair) -> Result<DensityMatrix> {
    require_three_qubits(rho)?;
    let (q1, q2) = keep.positions();
    let traced = 3 - q1 - q2;
    let m = rho.matrix();
    let mut out = CMatrix::zeros(4, 4);
    for r in 0..8 {
        for c in 0..8 {
            if bit(r, traced) == bit(c, traced) {
                let i = 2 * bit(r, q1) + bit(r, q2);
                let j = 2 * bit(c, q1) + bit(c, q2);
                out[(i, j)] += m[(r, c)];
            }
        }
    }
    Ok(DensityMatrix::from_matrix_unchecked(out))
}

/// `(1/2) sum |eigenvalues(rho - sigma)|`
pub fn trace_distance(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    if rho.dim() != sigma.dim() {
        return Err(Error::BadDimension {
            expected: rho.dim(),
            got: sigma.dim(),
        });
    }
    let diff = rho.matrix() - sigma.matrix();
    Ok(0.5 * diff.hermitian_eigen().values.iter().map(|l| l.abs()).sum::<f64>())
}
