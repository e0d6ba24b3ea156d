//! Qutrit Bloch geometry of the span of `|GHZ>`, `|W>` and `|W~>`.
//!
//! A state supported on the span is a 3x3 density matrix in the ordered
//! basis (GHZ, W, W~) and so has Gell-Mann coordinates
//! `sigma = (I + sqrt(3) n.lambda)/3`. Five known zero-tangle pure states
//! span a polytope in these coordinates; any state inside it is a mixture of
//! zero-tangle states and so has vanishing three-tangle.

use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{bad_params, Error, Result};
use crate::family::{ghz, validate_n, w, w_tilde, z_coefficients, FamilyParams, SYMMETRIC_PHASES};
use crate::linalg::{CMatrix, C64, ZERO};
use crate::simplex::project_onto_hull;
use crate::states::DensityMatrix;

pub const SPAN_LEAKAGE_TOL: f64 = 1e-10;
pub const DEFAULT_MEMBERSHIP_TOL: f64 = 1e-10;

const SQRT3: f64 = 1.732_050_807_568_877_2;

/// Gell-Mann coordinates of a qutrit state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochVector8(pub [f64; 8]);

impl BlochVector8 {
    pub fn norm(&self) -> f64 {
        self.0.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn components(&self) -> &[f64; 8] {
        &self.0
    }
}

/// The eight Gell-Mann matrices, `lambda_1 .. lambda_8`, with `Tr(l_i l_j) = 2 delta_ij`.
pub fn gell_mann() -> [CMatrix; 8] {
    let re = |x: f64| C64::new(x, 0.0);
    let im = |x: f64| C64::new(0.0, x);
    let sym = |i: usize, j: usize| {
        let mut m = CMatrix::zeros(3, 3);
        m[(i, j)] = re(1.0);
        m[(j, i)] = re(1.0);
        m
    };
    let anti = |i: usize, j: usize| {
        let mut m = CMatrix::zeros(3, 3);
        m[(i, j)] = im(-1.0);
        m[(j, i)] = im(1.0);
        m
    };
    let l8 = 1.0 / SQRT3;
    [
        sym(0, 1),
        anti(0, 1),
        CMatrix::from_diagonal(&[1.0, -1.0, 0.0]),
        sym(0, 2),
        anti(0, 2),
        sym(1, 2),
        anti(1, 2),
        CMatrix::from_diagonal(&[l8, l8, -2.0 * l8]),
    ]
}

/// `<e_i|rho|e_j>` in the basis (GHZ, W, W~).
pub fn qutrit_project(rho: &DensityMatrix) -> Result<DensityMatrix> {
    if rho.dim() != 8 {
        return Err(Error::BadDimension {
            expected: 8,
            got: rho.dim(),
        });
    }
    let basis = [ghz(), w(), w_tilde()];
    let m = rho.matrix();
    let sigma = CMatrix::from_fn(3, 3, |i, j| {
        let right = m.mul_vec(basis[j].amplitudes());
        basis[i].amplitudes().iter().zip(&right).map(|(a, b)| a.conj() * b).sum()
    });
    let inside = sigma.trace().re;
    let leakage = 1.0 - inside;
    if leakage > SPAN_LEAKAGE_TOL {
        return Err(Error::OutOfSpan(leakage));
    }
    DensityMatrix::new(sigma.scale(1.0 / inside))
}

/// `n_i = (sqrt(3)/2) Tr(sigma lambda_i)`
pub fn bloch_vector(sigma: &DensityMatrix) -> Result<BlochVector8> {
    if sigma.dim() != 3 {
        return Err(Error::BadDimension {
            expected: 3,
            got: sigma.dim(),
        });
    }
    let mut out = [0.0; 8];
    for (o, l) in out.iter_mut().zip(gell_mann().iter()) {
        *o = SQRT3 / 2.0 * (sigma.matrix() * l).trace().re;
    }
    Ok(BlochVector8(out))
}

/// `(I + sqrt(3) n.lambda)/3`, rejected unless positive semidefinite.
pub fn density_from_bloch(v: &BlochVector8) -> Result<DensityMatrix> {
    let mut m = CMatrix::identity(3);
    for (c, l) in v.0.iter().zip(gell_mann().iter()) {
        m = &m + &l.scale(SQRT3 * c);
    }
    DensityMatrix::new(m.scale(1.0 / 3.0))
}

/// Bloch images of the five zero-tangle pure states built from `p0`:
/// `W`, `W~`, then the Z states at `p0` with phase pairs
/// `(0,0)`, `(2pi/3, 4pi/3)`, `(4pi/3, 2pi/3)`.
///
/// Components come from the closed expressions in
/// `xi1 = sqrt(p0(1-p0)/n)`, `xi2 = sqrt(n-1) xi1`, `xi3 = sqrt(n-1)(1-p0)/n`,
/// `eta1 = (sqrt3/2)(1 - (n+1)(1-p0)/n)`, `eta2 = (1/2)(1 - 3(n-1)(1-p0)/n)`.
pub fn zero_tangle_vertices(n: f64, p0: f64) -> Result<[BlochVector8; 5]> {
    validate_n(n)?;
    if !(p0 > 0.0 && p0 < 1.0) {
        return Err(bad_params(alloc::format!("p0 = {p0} outside (0, 1)")));
    }
    let s = (n - 1.0).sqrt();
    let xi1 = (p0 * (1.0 - p0) / n).sqrt();
    let xi2 = s * xi1;
    let xi3 = s * (1.0 - p0) / n;
    let eta1 = SQRT3 / 2.0 * (1.0 - (n + 1.0) * (1.0 - p0) / n);
    let eta2 = 0.5 * (1.0 - 3.0 * (n - 1.0) * (1.0 - p0) / n);
    let h = SQRT3 / 2.0;
    Ok([
        BlochVector8([0.0, 0.0, -h, 0.0, 0.0, 0.0, 0.0, 0.5]),
        BlochVector8([0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, -1.0]),
        BlochVector8([-SQRT3 * xi1, 0.0, eta1, -SQRT3 * xi2, 0.0, SQRT3 * xi3, 0.0, eta2]),
        BlochVector8([h * xi1, -1.5 * xi1, eta1, h * xi2, 1.5 * xi2, -h * xi3, 1.5 * xi3, eta2]),
        BlochVector8([h * xi1, 1.5 * xi1, eta1, h * xi2, -1.5 * xi2, -h * xi3, -1.5 * xi3, eta2]),
    ])
}

/// The qutrit vectors whose Bloch images are [`zero_tangle_vertices`], same order.
pub fn zero_tangle_qutrit_states(n: f64, p0: f64) -> Result<[[C64; 3]; 5]> {
    validate_n(n)?;
    let one = C64::new(1.0, 0.0);
    let mut out = [[one, ZERO, ZERO]; 5];
    out[0] = [ZERO, one, ZERO];
    out[1] = [ZERO, ZERO, one];
    for (slot, &(phi1, phi2)) in out[2..].iter_mut().zip(&SYMMETRIC_PHASES) {
        *slot = z_coefficients(&FamilyParams::with_n(p0, n, phi1, phi2)?);
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Membership {
    pub inside: bool,
    pub weights: Vec<f64>,
    pub residual: f64,
}

/// Whether `v` lies in the convex hull of `vertices` up to `tol`.
pub fn in_zero_polyhedron(v: &BlochVector8, vertices: &[BlochVector8], tol: f64) -> Result<Membership> {
    if vertices.is_empty() {
        return Err(Error::EmptyInput);
    }
    let verts: Vec<Vec<f64>> = vertices.iter().map(|b| b.0.to_vec()).collect();
    let fit = project_onto_hull(&verts, &v.0);
    Ok(Membership {
        inside: fit.residual <= tol,
        weights: fit.weights,
        residual: fit.residual,
    })
}

/// Decision for an 8x8 state: project to the span, then test against the
/// polytope built from `p0(n)`.
pub fn vanishing_by_polyhedron(rho: &DensityMatrix, n: f64, p0: f64, tol: f64) -> Result<Membership> {
    let sigma = qutrit_project(rho)?;
    let v = bloch_vector(&sigma)?;
    in_zero_polyhedron(&v, &zero_tangle_vertices(n, p0)?, tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::solve_p0;
    use crate::family::{q_of, rho, rho_n, span_vector, z_state};
    use crate::measures::three_tangle_pure;
    use crate::states::{trace_distance, PureState3};
    use proptest::prelude::*;

    fn qutrit_pure(c: &[C64; 3]) -> DensityMatrix {
        DensityMatrix::new(CMatrix::outer(c, c)).expect("unit qutrit vector")
    }

    #[test]
    fn gell_mann_orthonormality() {
        let g = gell_mann();
        for i in 0..8 {
            assert!(g[i].hermiticity_defect() < 1e-16);
            assert!(g[i].trace().norm() < 1e-15);
            for j in 0..8 {
                let t = (&g[i] * &g[j]).trace();
                let expect = if i == j { 2.0 } else { 0.0 };
                assert!((t - C64::new(expect, 0.0)).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn named_images() {
        let wv = bloch_vector(&DensityMatrix::new(CMatrix::from_diagonal(&[0.0, 1.0, 0.0])).unwrap()).unwrap();
        let expect_w = [0.0, 0.0, -SQRT3 / 2.0, 0.0, 0.0, 0.0, 0.0, 0.5];
        assert!(wv.0.iter().zip(&expect_w).all(|(a, b)| (a - b).abs() < 1e-15));
        let wt = bloch_vector(&DensityMatrix::new(CMatrix::from_diagonal(&[0.0, 0.0, 1.0])).unwrap()).unwrap();
        assert!(wt
            .0
            .iter()
            .zip(&[0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, -1.0])
            .all(|(a, b)| (a - b).abs() < 1e-15));
        let mixed = bloch_vector(&DensityMatrix::new(CMatrix::from_diagonal(&[1.0 / 3.0; 3])).unwrap()).unwrap();
        assert!(mixed.norm() < 1e-15);
    }

    #[test]
    fn projection_examples() {
        let sigma = qutrit_project(&rho(0.5, 0.2).unwrap()).unwrap();
        assert!(sigma.matrix().max_abs_diff(&CMatrix::from_diagonal(&[0.5, 0.2, 0.3])) < 1e-15);
        let z = z_state(&FamilyParams::new(0.4, 0.35, 0.3, 2.0).unwrap());
        assert_eq!(qutrit_project(&z.projector()).unwrap().rank(1e-12), 1);
        match qutrit_project(&PureState3::basis(0, 0, 0).projector()) {
            Err(Error::OutOfSpan(leak)) => assert!((leak - 0.5).abs() < 1e-15),
            other => panic!("expected OutOfSpan, got {other:?}"),
        }
    }

    #[test]
    fn vertices_match_composed_maps() {
        for n in [1.0, 2.0, 3.0, 10.0] {
            let p0 = solve_p0(n).unwrap();
            let verts = zero_tangle_vertices(n, p0).unwrap();
            let states = zero_tangle_qutrit_states(n, p0).unwrap();
            for (v, c) in verts.iter().zip(&states) {
                assert!((v.norm() - 1.0).abs() < 1e-10);
                let direct = bloch_vector(&qutrit_pure(c)).unwrap();
                assert!(v.0.iter().zip(&direct.0).all(|(a, b)| (a - b).abs() < 1e-12), "n={n}");
                let psi = PureState3::from_amplitudes(span_vector(c)).unwrap();
                assert!(three_tangle_pure(&psi).value() < 1e-9);
            }
        }
    }

    #[test]
    fn membership_examples() {
        let n = 3.0;
        let p0 = solve_p0(n).unwrap();
        let verts = zero_tangle_vertices(n, p0).unwrap();
        for v in &verts {
            let m = in_zero_polyhedron(v, &verts, DEFAULT_MEMBERSHIP_TOL).unwrap();
            assert!(m.inside);
            assert!(m.weights.iter().any(|&w| (w - 1.0).abs() < 1e-12));
        }
        let p = 0.4;
        let v = bloch_vector(&qutrit_project(&rho_n(p, n).unwrap()).unwrap()).unwrap();
        let m = in_zero_polyhedron(&v, &verts, DEFAULT_MEMBERSHIP_TOL).unwrap();
        assert!(m.inside);
        // the Z vertices share p/(3 p0); W and W~ take (p0-p)/(n p0) and (n-1)(p0-p)/(n p0)
        let expect = [
            (p0 - p) / (n * p0),
            (n - 1.0) * (p0 - p) / (n * p0),
            p / (3.0 * p0),
            p / (3.0 * p0),
            p / (3.0 * p0),
        ];
        for (w, e) in m.weights.iter().zip(&expect) {
            assert!((w - e).abs() < 1e-9, "{w} vs {e}");
        }
        let ghz_v = bloch_vector(&DensityMatrix::new(CMatrix::from_diagonal(&[1.0, 0.0, 0.0])).unwrap()).unwrap();
        assert!(!in_zero_polyhedron(&ghz_v, &verts, DEFAULT_MEMBERSHIP_TOL).unwrap().inside);
        assert_eq!(in_zero_polyhedron(&ghz_v, &[], 1e-8), Err(Error::EmptyInput));
    }

    #[test]
    fn membership_weights_reconstruct() {
        for n in [1.0, 2.0, 10.0] {
            let p0 = solve_p0(n).unwrap();
            let states = zero_tangle_qutrit_states(n, p0).unwrap();
            for p in [0.0, 0.2, 0.5, p0] {
                let target = qutrit_project(&rho(p, q_of(p, n)).unwrap()).unwrap();
                let m = vanishing_by_polyhedron(&rho_n(p, n).unwrap(), n, p0, DEFAULT_MEMBERSHIP_TOL).unwrap();
                assert!(m.inside);
                let parts: Vec<(f64, DensityMatrix)> = m.weights.iter().zip(&states).map(|(&w, c)| (w, qutrit_pure(c))).collect();
                let refs: Vec<(f64, &DensityMatrix)> = parts.iter().map(|(w, d)| (*w, d)).collect();
                let mix = DensityMatrix::mixture(&refs).unwrap();
                assert!(trace_distance(&mix, &target).unwrap() < 1e-7);
            }
        }
    }

    #[test]
    fn invalid_bloch_vectors_are_rejected() {
        // unit vector along lambda_8 scaled past the boundary: not PSD
        assert!(density_from_bloch(&BlochVector8([0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.2])).is_err());
        // on S^8 but not a state (third eigenvalue would be negative)
        assert!(density_from_bloch(&BlochVector8([0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0])).is_err());
    }

    fn qutrit_state() -> impl Strategy<Value = DensityMatrix> {
        (
            proptest::array::uniform3((-1.0f64..1.0, -1.0f64..1.0)),
            proptest::array::uniform3((-1.0f64..1.0, -1.0f64..1.0)),
            0.0f64..1.0,
        )
            .prop_filter_map("nonzero", |(a, b, t)| {
                let a = a.map(|(x, y)| C64::new(x, y));
                let b = b.map(|(x, y)| C64::new(x, y));
                let na = a.iter().map(|z| z.norm_sqr()).sum::<f64>();
                let nb = b.iter().map(|z| z.norm_sqr()).sum::<f64>();
                if na < 1e-6 || nb < 1e-6 {
                    return None;
                }
                let m = &CMatrix::outer(&a, &a).scale(t / na) + &CMatrix::outer(&b, &b).scale((1.0 - t) / nb);
                DensityMatrix::new(m).ok()
            })
    }

    proptest! {
        #[test]
        fn bloch_round_trip(sigma in qutrit_state()) {
            let v = bloch_vector(&sigma).unwrap();
            prop_assert!(v.norm() <= 1.0 + 1e-10);
            let back = density_from_bloch(&v).unwrap();
            prop_assert!(back.matrix().max_abs_diff(sigma.matrix()) <= 1e-12);
        }
    }
}
