//! Ensembles generated from the eigen-ensemble by isometries.
//!
//! Every ensemble realising `rho` is `|psi~_j> = sum_i U_ji sqrt(lambda_i) |v_i>`
//! for some `m x r` matrix `U` with orthonormal columns.

use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::linalg::{isometry_defect, CMatrix, C64, ZERO};
use crate::states::{DensityMatrix, Ensemble, PureState3};

/// Eigenvalues at or below this are outside the support.
pub const RANK_TOL: f64 = 1e-12;
const ISOMETRY_TOL: f64 = 1e-10;
/// Unnormalised members with squared norm below this are dropped.
const MEMBER_DROP: f64 = 1e-15;

/// Support of a three-qubit density matrix: `sqrt(lambda_i) |v_i>` for the
/// eigenvalues above [`RANK_TOL`], largest first.
#[derive(Debug, Clone)]
pub struct EigenEnsemble {
    pub values: Vec<f64>,
    scaled: Vec<[C64; 8]>,
}

impl EigenEnsemble {
    pub fn new(rho: &DensityMatrix) -> Result<Self> {
        if rho.dim() != 8 {
            return Err(Error::BadDimension {
                expected: 8,
                got: rho.dim(),
            });
        }
        let eig = rho.eigen();
        let mut values = Vec::new();
        let mut scaled = Vec::new();
        for k in (0..8).rev() {
            let lam = eig.values[k];
            if lam > RANK_TOL {
                let s = lam.sqrt();
                let mut v = [ZERO; 8];
                for (o, x) in v.iter_mut().zip(eig.vector(k)) {
                    *o = x * s;
                }
                values.push(lam);
                scaled.push(v);
            }
        }
        Ok(Self { values, scaled })
    }

    pub fn rank(&self) -> usize {
        self.values.len()
    }

    /// Unit eigenvector `i`.
    pub fn vector(&self, i: usize) -> [C64; 8] {
        let s = self.values[i].sqrt();
        self.scaled[i].map(|x| x / s)
    }

    /// Row `j` of `U` applied to the scaled eigenvectors.
    pub(crate) fn member(&self, u: &CMatrix, j: usize) -> [C64; 8] {
        let mut out = [ZERO; 8];
        for (i, v) in self.scaled.iter().enumerate() {
            let c = u[(j, i)];
            for (o, x) in out.iter_mut().zip(v) {
                *o += c * x;
            }
        }
        out
    }

    /// Turns subnormalised members into a normalised ensemble.
    pub(crate) fn ensemble_from(&self, u: &CMatrix) -> Result<Ensemble> {
        let mut members = Vec::with_capacity(u.rows());
        for j in 0..u.rows() {
            let v = self.member(u, j);
            let w: f64 = v.iter().map(|a| a.norm_sqr()).sum();
            if w > MEMBER_DROP {
                members.push((w, PureState3::from_amplitudes(v)?));
            }
        }
        let total: f64 = members.iter().map(|m| m.0).sum();
        if total <= 0.0 {
            return Err(Error::EmptyInput);
        }
        members.iter_mut().for_each(|m| m.0 /= total);
        Ensemble::new(members)
    }
}

/// Ensemble of `rho` generated by the isometry `u` (`m x rank`).
pub fn hjw_ensemble(rho: &DensityMatrix, u: &CMatrix) -> Result<Ensemble> {
    let eig = EigenEnsemble::new(rho)?;
    if u.cols() != eig.rank() {
        return Err(Error::BadDimension {
            expected: eig.rank(),
            got: u.cols(),
        });
    }
    let defect = isometry_defect(u);
    if !(defect <= ISOMETRY_TOL) {
        return Err(Error::NotIsometry(defect));
    }
    eig.ensemble_from(u)
}

/// The isometry `U_ji = <v_i|psi~_j> / sqrt(lambda_i)` taking the eigen-ensemble of
/// `rho` to `ens`. Fails with `NotIsometry` if `ens` does not realise `rho`.
pub fn isometry_from_ensemble(rho: &DensityMatrix, ens: &Ensemble) -> Result<CMatrix> {
    let eig = EigenEnsemble::new(rho)?;
    let r = eig.rank();
    let mut u = CMatrix::zeros(ens.len(), r);
    for (j, (w, psi)) in ens.members().iter().enumerate() {
        let sw = w.sqrt();
        for i in 0..r {
            let v = eig.vector(i);
            let dot: C64 = v.iter().zip(psi.amplitudes()).map(|(a, b)| a.conj() * b).sum();
            u[(j, i)] = dot * sw / eig.values[i].sqrt();
        }
    }
    let defect = isometry_defect(&u);
    if !(defect <= 1e-8) {
        return Err(Error::NotIsometry(defect));
    }
    Ok(u)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::Thresholds;
    use crate::family::{optimal_decomposition, rho_n};
    use crate::linalg::orthonormalize_columns;
    use crate::measures::three_tangle_pure;
    use crate::states::{density_from_ensemble, trace_distance};
    use alloc::vec;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_isometry(m: usize, r: usize, rng: &mut ChaCha8Rng) -> CMatrix {
        let mut a = CMatrix::from_fn(m, r, |_, _| C64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5));
        assert!(orthonormalize_columns(&mut a));
        a
    }

    fn sample_rho() -> DensityMatrix {
        rho_n(0.7, 3.0).unwrap()
    }

    #[test]
    fn identity_gives_eigen_ensemble() {
        let rho = sample_rho();
        let eig = EigenEnsemble::new(&rho).unwrap();
        assert_eq!(eig.rank(), 3);
        let ens = hjw_ensemble(&rho, &CMatrix::identity(3)).unwrap();
        assert_eq!(ens.len(), 3);
        for (i, (w, psi)) in ens.members().iter().enumerate() {
            assert!((w - eig.values[i]).abs() < 1e-14);
            let v = eig.vector(i);
            let overlap: C64 = v.iter().zip(psi.amplitudes()).map(|(a, b)| a.conj() * b).sum();
            assert!((overlap.norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn random_isometries_reconstruct() {
        let rho = sample_rho();
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for m in 3..=8 {
            let u = random_isometry(m, 3, &mut rng);
            let ens = hjw_ensemble(&rho, &u).unwrap();
            assert!(trace_distance(&density_from_ensemble(&ens), &rho).unwrap() <= 1e-10);
        }
    }

    #[test]
    fn rejects_non_isometry() {
        let rho = sample_rho();
        let u = CMatrix::identity(3).scale(1.1);
        assert!(matches!(hjw_ensemble(&rho, &u), Err(Error::NotIsometry(_))));
        assert!(matches!(hjw_ensemble(&rho, &CMatrix::identity(4)), Err(Error::BadDimension { .. })));
    }

    #[test]
    fn row_permutation_and_phases_leave_weights_and_average() {
        let rho = sample_rho();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let u = random_isometry(5, 3, &mut rng);
        let perm = [3usize, 0, 4, 1, 2];
        let moved = CMatrix::from_fn(5, 3, |j, i| {
            let t = 0.7 * j as f64 + 0.3;
            u[(perm[j], i)] * C64::new(t.cos(), t.sin())
        });
        let a = hjw_ensemble(&rho, &u).unwrap();
        let b = hjw_ensemble(&rho, &moved).unwrap();
        let avg = |e: &Ensemble| e.average(|s| three_tangle_pure(s).value());
        assert!((avg(&a) - avg(&b)).abs() < 1e-10);
        let mut wa: Vec<f64> = a.members().iter().map(|m| m.0).collect();
        let mut wb: Vec<f64> = b.members().iter().map(|m| m.0).collect();
        wa.sort_by(f64::total_cmp);
        wb.sort_by(f64::total_cmp);
        for (x, y) in wa.iter().zip(&wb) {
            assert!((x - y).abs() < 1e-10);
        }
    }

    #[test]
    fn recovers_isometry_of_optimal_decomposition() {
        for n in [1.0, 2.0, 3.0, 10.0] {
            let th = Thresholds::compute(n).unwrap();
            for p in [0.5 * th.p0, th.p0, 0.5 * (th.p0 + th.p1)] {
                let rho = rho_n(p, n).unwrap();
                let ens = optimal_decomposition(p, n, &th).unwrap();
                let u = isometry_from_ensemble(&rho, &ens).unwrap();
                let back = hjw_ensemble(&rho, &u).unwrap();
                assert_eq!(back.len(), ens.len());
                for ((w1, s1), (w2, s2)) in back.members().iter().zip(ens.members()) {
                    assert!((w1 - w2).abs() < 1e-10);
                    assert!((s1.inner(s2).norm() - 1.0).abs() < 1e-10);
                }
            }
        }
    }

    #[test]
    fn foreign_ensemble_is_rejected() {
        let rho = sample_rho();
        let other = Ensemble::new(vec![(1.0, PureState3::basis(0, 1, 1))]).unwrap();
        assert!(isometry_from_ensemble(&rho, &other).is_err());
    }
}
