//! Small dense complex matrices.
//!
//! Everything here is sized for at most a few dozen rows, so storage is a
//! plain row-major `Vec` and the Hermitian eigensolver is cyclic Jacobi.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Index, IndexMut, Mul, Sub};

#[allow(unused_imports)]
use num_traits::Float;

pub type C64 = num_complex::Complex64;

pub(crate) const ZERO: C64 = C64::new(0.0, 0.0);
pub(crate) const ONE: C64 = C64::new(1.0, 0.0);

#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Row-major construction; panics if `data.len() != rows * cols`.
    pub fn from_row_major(rows: usize, cols: usize, data: Vec<C64>) -> Self {
        assert_eq!(data.len(), rows * cols, "row-major data has wrong length");
        Self { rows, cols, data }
    }

    pub fn from_diagonal(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len(), diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = C64::new(d, 0.0);
        }
        m
    }

    /// `|a><b|`
    pub fn outer(a: &[C64], b: &[C64]) -> Self {
        Self::from_fn(a.len(), b.len(), |i, j| a[i] * b[j].conj())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    pub fn column(&self, j: usize) -> Vec<C64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn conj(&self) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z.conj()).collect(),
        }
    }

    pub fn scale(&self, s: f64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z * s).collect(),
        }
    }

    pub fn trace(&self) -> C64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    /// Accumulates `s * |v><v|` in place.
    pub fn add_projector(&mut self, s: f64, v: &[C64]) {
        debug_assert!(self.is_square() && v.len() == self.rows);
        for (row, vi) in self.data.chunks_mut(self.cols).zip(v) {
            let vi = vi * s;
            for (x, vj) in row.iter_mut().zip(v) {
                *x += vi * vj.conj();
            }
        }
    }

    pub fn mul_vec(&self, v: &[C64]) -> Vec<C64> {
        debug_assert_eq!(v.len(), self.cols);
        (0..self.rows).map(|i| (0..self.cols).map(|j| self[(i, j)] * v[j]).sum()).collect()
    }

    /// Largest `|A_ij - conj(A_ji)|`.
    pub fn hermiticity_defect(&self) -> f64 {
        let mut worst = 0.0_f64;
        for i in 0..self.rows {
            for j in i..self.cols {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.data.iter().zip(&other.data).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Eigen-decomposition of a Hermitian matrix.
    ///
    /// Only the upper triangle is trusted; the input is symmetrised first.
    pub fn hermitian_eigen(&self) -> HermitianEigen {
        hermitian_eigen(self)
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &CMatrix {
    type Output = CMatrix;
    fn mul(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.cols, rhs.rows, "inner dimensions differ");
        let mut out = CMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == ZERO {
                    continue;
                }
                for j in 0..rhs.cols {
                    out.data[i * rhs.cols + j] += a * rhs[(k, j)];
                }
            }
        }
        out
    }
}

impl Add for &CMatrix {
    type Output = CMatrix;
    fn add(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &CMatrix {
    type Output = CMatrix;
    fn sub(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

/// Eigenvalues in ascending order; `vectors` holds the matching eigenvectors as columns.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    pub vectors: CMatrix,
}

impl HermitianEigen {
    pub fn vector(&self, k: usize) -> Vec<C64> {
        self.vectors.column(k)
    }
}

const JACOBI_MAX_SWEEPS: usize = 64;

fn hermitian_eigen(m: &CMatrix) -> HermitianEigen {
    assert!(m.is_square(), "eigen-decomposition needs a square matrix");
    let n = m.rows;
    let mut a = CMatrix::from_fn(n, n, |i, j| {
        if i == j {
            C64::new(m[(i, i)].re, 0.0)
        } else if i < j {
            (m[(i, j)] + m[(j, i)].conj()) * 0.5
        } else {
            (m[(j, i)] + m[(i, j)].conj()).conj() * 0.5
        }
    });
    let mut v = CMatrix::identity(n);

    let scale = a.frobenius_norm();
    if scale > 0.0 {
        for _ in 0..JACOBI_MAX_SWEEPS {
            let off: f64 = (0..n)
                .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
                .map(|(i, j)| a[(i, j)].norm_sqr())
                .sum();
            if off.sqrt() <= f64::EPSILON * 1e-3 * scale {
                break;
            }
            for p in 0..n {
                for q in p + 1..n {
                    rotate(&mut a, &mut v, p, q);
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let vectors = CMatrix::from_fn(n, n, |i, k| v[(i, order[k])]);
    HermitianEigen { values, vectors }
}

/// One complex Jacobi rotation zeroing `a[p][q]`; `a <- J^H a J`, `v <- v J`.
fn rotate(a: &mut CMatrix, v: &mut CMatrix, p: usize, q: usize) {
    let g = a[(p, q)];
    let g_abs = g.norm();
    if g_abs == 0.0 {
        return;
    }
    let phase = g / g_abs;
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let tau = (aqq - app) / (2.0 * g_abs);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    // J = diag(1, conj(phase)) * [[c, s], [-s, c]] restricted to (p, q).
    let jpp = C64::new(c, 0.0);
    let jpq = C64::new(s, 0.0);
    let jqp = -phase.conj() * s;
    let jqq = phase.conj() * c;

    let n = a.rows;
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * jpp + akq * jqp;
        a[(k, q)] = akp * jpq + akq * jqq;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = jpp.conj() * apk + jqp.conj() * aqk;
        a[(q, k)] = jpq.conj() * apk + jqq.conj() * aqk;
    }
    a[(p, q)] = ZERO;
    a[(q, p)] = ZERO;
    a[(p, p)] = C64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = C64::new(a[(q, q)].re, 0.0);
    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * jpp + vkq * jqp;
        v[(k, q)] = vkp * jpq + vkq * jqq;
    }
}

/// Pivoted Cholesky factor `L` (n x r) of a Hermitian PSD matrix with `L L^H = m`.
///
/// Elimination stops once every remaining pivot is at most `drop_tol`, so
/// numerically-zero directions never enter the factor.
pub fn pivoted_cholesky(m: &CMatrix, drop_tol: f64) -> CMatrix {
    assert!(m.is_square());
    let n = m.rows;
    let mut work = m.clone();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut cols: Vec<Vec<C64>> = Vec::new();

    for k in 0..n {
        let (piv, dmax) = (k..n)
            .map(|i| (i, work[(perm[i], perm[i])].re))
            .fold((k, f64::NEG_INFINITY), |acc, x| if x.1 > acc.1 { x } else { acc });
        if dmax <= drop_tol {
            break;
        }
        perm.swap(k, piv);
        let pk = perm[k];
        let root = dmax.sqrt();
        let mut col = vec![ZERO; n];
        col[pk] = C64::new(root, 0.0);
        for &pi in &perm[k + 1..] {
            col[pi] = work[(pi, pk)] / root;
        }
        for &pi in &perm[k + 1..] {
            for &pj in &perm[k + 1..] {
                let upd = col[pi] * col[pj].conj();
                work[(pi, pj)] -= upd;
            }
        }
        for &pi in &perm[k..] {
            work[(pi, pk)] = ZERO;
            work[(pk, pi)] = ZERO;
        }
        cols.push(col);
    }

    CMatrix::from_fn(n, cols.len(), |i, j| cols[j][i])
}

/// Singular values of a complex matrix, descending, via the Hermitian
/// dilation `[[0, A], [A^H, 0]]`, whose eigenvalues are `+-sigma`.
///
/// Unlike the eigenvalues of `A^H A`, no square root of a noisy near-zero
/// quantity is taken.
pub fn singular_values(a: &CMatrix) -> Vec<f64> {
    let (r, c) = (a.rows, a.cols);
    let k = r.min(c);
    if k == 0 {
        return Vec::new();
    }
    let n = r + c;
    let dil = CMatrix::from_fn(n, n, |i, j| {
        if i < r && j >= r {
            a[(i, j - r)]
        } else if i >= r && j < r {
            a[(j, i - r)].conj()
        } else {
            ZERO
        }
    });
    let eig = dil.hermitian_eigen();
    eig.values.iter().rev().take(k).map(|&s| s.max(0.0)).collect()
}

/// Orthonormalises the columns of `a` in place (classical Gram-Schmidt, two passes).
///
/// Returns `false` if a column is numerically dependent on the previous ones.
pub fn orthonormalize_columns(a: &mut CMatrix) -> bool {
    let (m, r) = (a.rows, a.cols);
    for j in 0..r {
        for _pass in 0..2 {
            for k in 0..j {
                let mut dot = ZERO;
                for i in 0..m {
                    dot += a[(i, k)].conj() * a[(i, j)];
                }
                for i in 0..m {
                    let u = a[(i, k)];
                    a[(i, j)] -= u * dot;
                }
            }
        }
        let norm = (0..m).map(|i| a[(i, j)].norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-13 {
            return false;
        }
        for i in 0..m {
            a[(i, j)] /= norm;
        }
    }
    true
}

/// Largest deviation of `A^H A` from the identity.
pub fn isometry_defect(a: &CMatrix) -> f64 {
    let g = &a.adjoint() * a;
    g.max_abs_diff(&CMatrix::identity(a.cols))
}
