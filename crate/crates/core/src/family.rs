//! The GHZ / W / flipped-W family.
//!
//! The Z states `sqrt(p)|GHZ> - e^{i phi1} sqrt(q)|W> - e^{i phi2} sqrt(1-p-q)|W~>`
//! and the rank-3 mixture `rho(p, q)` they decompose, plus the region-wise
//! optimal decompositions of `rho(p, (1-p)/n)`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

#[allow(unused_imports)]
use num_traits::Float;

use crate::analytic::Thresholds;
use crate::error::{bad_params, Result};
use crate::linalg::{CMatrix, C64, ZERO};
use crate::states::{DensityMatrix, Ensemble, PureState3};

const PARAM_TOL: f64 = 1e-12;
/// Members lighter than this are dropped from constructed decompositions.
const WEIGHT_PRUNE: f64 = 1e-14;

/// Phase pairs `(phi1, phi2)` of the symmetric three-member ensemble.
pub const SYMMETRIC_PHASES: [(f64, f64); 3] = [(0.0, 0.0), (2.0 * PI / 3.0, 4.0 * PI / 3.0), (4.0 * PI / 3.0, 2.0 * PI / 3.0)];

fn real_state(amps: [f64; 8]) -> PureState3 {
    PureState3::from_real(amps).expect("nonzero literal")
}

/// `(|000> + |111>)/sqrt(2)`
pub fn ghz() -> PureState3 {
    real_state([1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0])
}

/// `(|000> - |111>)/sqrt(2)`
pub fn ghz_minus() -> PureState3 {
    real_state([1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, -1.0])
}

/// `(|001> + |010> + |100>)/sqrt(3)`
pub fn w() -> PureState3 {
    real_state([0.0, 1.0, 1.0, 0.0, 1.0, 0.0, 0.0, 0.0])
}

/// `(|110> + |101> + |011>)/sqrt(3)`
pub fn w_tilde() -> PureState3 {
    real_state([0.0, 0.0, 0.0, 1.0, 0.0, 1.0, 1.0, 0.0])
}

/// Checks that `n` can index the family, `n >= 1`.
pub fn validate_n(n: f64) -> Result<()> {
    if n >= 1.0 && n.is_finite() {
        Ok(())
    } else {
        Err(bad_params(format!("n = {n} must be a finite number >= 1")))
    }
}

/// Whether `n` is one of the integer values for which the family results are established.
pub fn is_validated_n(n: f64) -> bool {
    n >= 1.0 && n.is_finite() && n.fract() == 0.0
}

/// `q = (1 - p)/n`
pub fn q_of(p: f64, n: f64) -> f64 {
    (1.0 - p) / n
}

fn validate_pq(p: f64, q: f64) -> Result<()> {
    if !(-PARAM_TOL..=1.0 + PARAM_TOL).contains(&p) {
        return Err(bad_params(format!("p = {p} outside [0, 1]")));
    }
    if !(q >= -PARAM_TOL) {
        return Err(bad_params(format!("q = {q} is negative")));
    }
    if p + q > 1.0 + PARAM_TOL {
        return Err(bad_params(format!("p + q = {} exceeds 1", p + q)));
    }
    Ok(())
}

/// Parameters `(p, q, phi1, phi2)` of a Z state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FamilyParams {
    pub p: f64,
    pub q: f64,
    pub phi1: f64,
    pub phi2: f64,
}

impl FamilyParams {
    pub fn new(p: f64, q: f64, phi1: f64, phi2: f64) -> Result<Self> {
        validate_pq(p, q)?;
        Ok(Self {
            p: p.clamp(0.0, 1.0),
            q: q.max(0.0),
            phi1,
            phi2,
        })
    }

    /// `q = (1 - p)/n`
    pub fn with_n(p: f64, n: f64, phi1: f64, phi2: f64) -> Result<Self> {
        validate_n(n)?;
        Self::new(p, q_of(p, n), phi1, phi2)
    }

    /// Weight of `|W~>`, `1 - p - q`.
    pub fn r(&self) -> f64 {
        (1.0 - self.p - self.q).max(0.0)
    }
}

fn phase(theta: f64) -> C64 {
    C64::new(theta.cos(), theta.sin())
}

/// Amplitudes of the Z state in the ordered qutrit basis (GHZ, W, W~).
pub fn z_coefficients(params: &FamilyParams) -> [C64; 3] {
    [
        C64::new(params.p.sqrt(), 0.0),
        -phase(params.phi1) * params.q.sqrt(),
        -phase(params.phi2) * params.r().sqrt(),
    ]
}

/// Three-qubit state `c0 |GHZ> + c1 |W> + c2 |W~>` without renormalisation.
pub(crate) fn span_vector(c: &[C64; 3]) -> [C64; 8] {
    let basis = [ghz(), w(), w_tilde()];
    let mut out = [ZERO; 8];
    for (coef, state) in c.iter().zip(&basis) {
        for (o, a) in out.iter_mut().zip(state.amplitudes()) {
            *o += coef * a;
        }
    }
    out
}

pub fn z_state(params: &FamilyParams) -> PureState3 {
    PureState3::from_amplitudes(span_vector(&z_coefficients(params))).expect("Z state has unit norm")
}

/// Closed-form three-tangle of the Z state.
pub fn z_tangle_closed(params: &FamilyParams) -> f64 {
    let (p, q, r) = (params.p, params.q, params.r());
    let k = 8.0 * 6.0_f64.sqrt() / 9.0;
    let sum = params.phi1 + params.phi2;
    let z = C64::new(p * p, 0.0)
        - phase(sum) * (4.0 * p * (q * r).sqrt())
        - phase(2.0 * sum) * (4.0 / 3.0 * q * r)
        - phase(3.0 * params.phi1) * (k * (p * q * q * q).sqrt())
        - phase(3.0 * params.phi2) * (k * (p * r * r * r).sqrt());
    z.norm()
}

/// `p |GHZ><GHZ| + q |W><W| + (1-p-q) |W~><W~|`
pub fn rho(p: f64, q: f64) -> Result<DensityMatrix> {
    let params = FamilyParams::new(p, q, 0.0, 0.0)?;
    let mut m = CMatrix::zeros(8, 8);
    m.add_projector(params.p, ghz().amplitudes());
    m.add_projector(params.q, w().amplitudes());
    m.add_projector(params.r(), w_tilde().amplitudes());
    DensityMatrix::new(m)
}

/// `rho(p, (1-p)/n)`
pub fn rho_n(p: f64, n: f64) -> Result<DensityMatrix> {
    validate_n(n)?;
    rho(p, q_of(p, n))
}

fn z_triple(p: f64, q: f64) -> Result<[PureState3; 3]> {
    let mut out = [ghz(); 3];
    for (slot, &(phi1, phi2)) in out.iter_mut().zip(&SYMMETRIC_PHASES) {
        *slot = z_state(&FamilyParams::new(p, q, phi1, phi2)?);
    }
    Ok(out)
}

/// Equal-weight ensemble of the three Z states at phase pairs
/// `(0,0), (2pi/3, 4pi/3), (4pi/3, 2pi/3)`; it realises `rho(p, q)`.
pub fn symmetric_ensemble(p: f64, q: f64) -> Result<Ensemble> {
    let members = z_triple(p, q)?.into_iter().map(|s| (1.0 / 3.0, s)).collect();
    Ensemble::new(members)
}

fn pruned(members: Vec<(f64, PureState3)>) -> Result<Ensemble> {
    let kept: Vec<_> = members.into_iter().filter(|(w, _)| *w > WEIGHT_PRUNE).collect();
    let total: f64 = kept.iter().map(|(w, _)| w).sum();
    Ensemble::new(kept.into_iter().map(|(w, s)| (w / total, s)).collect())
}

/// Region-wise optimal decomposition of `rho(p, (1-p)/n)`.
///
/// * `p <= p0`: Z states at `p0` with total weight `p/p0`, topped up with
///   `W` and `W~` so every member has zero tangle.
/// * `p0 < p <= p1`: [`symmetric_ensemble`].
/// * `p > p1`: `|GHZ>` with weight `(p - p1)/(1 - p1)` plus Z states at `p1`.
///
/// Members with negligible weight are dropped.
pub fn optimal_decomposition(p: f64, n: f64, th: &Thresholds) -> Result<Ensemble> {
    validate_n(n)?;
    validate_pq(p, 0.0)?;
    if (th.n - n).abs() > 1e-12 {
        return Err(bad_params(format!("thresholds computed for n = {}, not {n}", th.n)));
    }
    let p = p.clamp(0.0, 1.0);
    let (p0, p1) = (th.p0, th.p1);
    if p <= p0 {
        let mut members: Vec<_> = z_triple(p0, q_of(p0, n))?.into_iter().map(|s| (p / (3.0 * p0), s)).collect();
        members.push(((p0 - p) / (n * p0), w()));
        members.push(((n - 1.0) * (p0 - p) / (n * p0), w_tilde()));
        pruned(members)
    } else if p <= p1 {
        symmetric_ensemble(p, q_of(p, n))
    } else {
        let mut members = vec![((p - p1) / (1.0 - p1), ghz())];
        let share = (1.0 - p) / (3.0 * (1.0 - p1));
        members.extend(z_triple(p1, q_of(p1, n))?.into_iter().map(|s| (share, s)));
        pruned(members)
    }
}

/// `p |GHZ+><GHZ+| + ((1-p)/n) |W><W| + ((n-1)(1-p)/n) |GHZ-><GHZ-|`.
///
/// `n = f64::INFINITY` drops the `W` term.
pub fn pi_state(p: f64, n: f64) -> Result<DensityMatrix> {
    validate_pq(p, 0.0)?;
    let (w_weight, minus_weight) = if n == f64::INFINITY {
        (0.0, 1.0 - p)
    } else {
        validate_n(n)?;
        ((1.0 - p) / n, (n - 1.0) * (1.0 - p) / n)
    };
    let mut m = CMatrix::zeros(8, 8);
    m.add_projector(p, ghz().amplitudes());
    m.add_projector(w_weight, w().amplitudes());
    m.add_projector(minus_weight, ghz_minus().amplitudes());
    DensityMatrix::new(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::three_tangle_pure;
    use crate::states::{density_from_ensemble, trace_distance};
    use proptest::prelude::*;

    #[test]
    fn named_states_are_orthogonal() {
        assert!(ghz().inner(&w()).norm() < 1e-16);
        assert!(w().inner(&w_tilde()).norm() < 1e-16);
        assert!(ghz().inner(&w_tilde()).norm() < 1e-16);
        assert!(ghz().inner(&ghz_minus()).norm() < 1e-16);
    }

    #[test]
    fn z_state_endpoints() {
        let g = z_state(&FamilyParams::new(1.0, 0.0, 0.3, 1.1).unwrap());
        assert!((g.inner(&ghz()).norm() - 1.0).abs() < 1e-15);
        let mw = z_state(&FamilyParams::new(0.0, 1.0, 0.0, 0.4).unwrap());
        assert!((mw.inner(&w()) + C64::new(1.0, 0.0)).norm() < 1e-15);
        assert!(FamilyParams::new(0.7, 0.4, 0.0, 0.0).is_err());
        assert!(FamilyParams::new(-0.1, 0.4, 0.0, 0.0).is_err());
        assert!(FamilyParams::with_n(0.5, 0.5, 0.0, 0.0).is_err());
    }

    #[test]
    fn closed_tangle_endpoints() {
        for phi in [0.0, 0.7, 2.0] {
            let t = z_tangle_closed(&FamilyParams::new(1.0, 0.0, phi, -phi).unwrap());
            assert!((t - 1.0).abs() < 1e-15);
            assert!(z_tangle_closed(&FamilyParams::new(0.0, 1.0, phi, phi).unwrap()) < 1e-15);
        }
    }

    #[test]
    fn rho_examples() {
        let r = rho(1.0, 0.0).unwrap();
        assert!(r.matrix().max_abs_diff(ghz().projector().matrix()) < 1e-15);
        assert_eq!(rho(0.5, 0.25).unwrap().rank(1e-12), 3);
        assert!(rho(0.5, 0.6).is_err());

        // rank-2 GHZ/W mixture
        let p = 0.3;
        let two = DensityMatrix::mixture(&[(p, &ghz().projector()), (1.0 - p, &w().projector())]).unwrap();
        assert!(trace_distance(&rho(p, 1.0 - p).unwrap(), &two).unwrap() < 1e-15);
    }

    #[test]
    fn symmetric_ensemble_reconstructs() {
        for i in 0..=10 {
            for j in 0..=10 {
                let p = i as f64 / 10.0;
                let q = (1.0 - p) * j as f64 / 10.0;
                let ens = symmetric_ensemble(p, q).unwrap();
                let d = trace_distance(&density_from_ensemble(&ens), &rho(p, q).unwrap()).unwrap();
                assert!(d <= 1e-12, "p={p} q={q} d={d}");
                let t: Vec<f64> = ens.members().iter().map(|(_, s)| three_tangle_pure(s).value()).collect();
                assert!((t[0] - t[1]).abs() < 1e-12 && (t[0] - t[2]).abs() < 1e-12);
            }
        }
        for (_, s) in symmetric_ensemble(1.0, 0.0).unwrap().members() {
            assert!((s.inner(&ghz()).norm() - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn optimal_decomposition_regions() {
        let th = Thresholds::compute(3.0).unwrap();
        let member_counts = [(0.0, 2), (0.3, 5), (th.p0, 3), (0.85, 3), (th.p1, 3), (0.97, 4), (1.0, 1)];
        for (p, expected) in member_counts {
            let ens = optimal_decomposition(p, 3.0, &th).unwrap();
            assert_eq!(ens.len(), expected, "p={p}");
            let d = trace_distance(&density_from_ensemble(&ens), &rho_n(p, 3.0).unwrap()).unwrap();
            assert!(d <= 1e-12, "p={p} d={d}");
        }
        let low = optimal_decomposition(0.3, 3.0, &th).unwrap();
        assert!(low.average(|s| three_tangle_pure(s).value()) < 1e-12);
        let other = Thresholds::compute(2.0).unwrap();
        assert!(optimal_decomposition(0.3, 3.0, &other).is_err());
    }

    #[test]
    fn pi_state_examples() {
        for p in [0.0, 0.2, 0.6, 1.0] {
            let d = trace_distance(&pi_state(p, 1.0).unwrap(), &rho(p, 1.0 - p).unwrap()).unwrap();
            assert!(d < 1e-15);
        }
        for n in [1.0, 2.0, 7.0, f64::INFINITY] {
            let d = trace_distance(&pi_state(1.0, n).unwrap(), &ghz().projector()).unwrap();
            assert!(d < 1e-15);
        }
        assert!(pi_state(0.5, 0.5).is_err());
        assert!(pi_state(1.5, 2.0).is_err());
    }

    #[test]
    fn large_n_is_flipped_rank_two_mixture() {
        let x = [ZERO, C64::new(1.0, 0.0), C64::new(1.0, 0.0), ZERO];
        let xxx = CMatrix::from_fn(8, 8, |r, c| {
            let mut z = C64::new(1.0, 0.0);
            for q in 0..3 {
                z *= x[2 * ((r >> (2 - q)) & 1) + ((c >> (2 - q)) & 1)];
            }
            z
        });
        for p in [0.0, 0.25, 0.8] {
            let flipped = rho(p, 1.0 - p).unwrap().conjugate_by(&xxx);
            let limit = rho(p, 0.0).unwrap();
            assert!(flipped.matrix().max_abs_diff(limit.matrix()) < 1e-12);
        }
    }

    proptest! {
        #[test]
        fn closed_form_matches_hyperdeterminant(p in 0.0f64..1.0, s in 0.0f64..1.0, phi1 in 0.0f64..6.3, phi2 in 0.0f64..6.3) {
            let params = FamilyParams::new(p, (1.0 - p) * s, phi1, phi2).unwrap();
            let z = z_state(&params);
            let norm: f64 = z.amplitudes().iter().map(|a| a.norm_sqr()).sum();
            prop_assert!((norm - 1.0).abs() < 1e-14);
            prop_assert!((three_tangle_pure(&z).value() - z_tangle_closed(&params)).abs() <= 1e-12);
        }

        #[test]
        fn phase_periodicity(p in 0.0f64..1.0, s in 0.0f64..1.0, phi1 in 0.0f64..6.3, phi2 in 0.0f64..6.3) {
            let a = FamilyParams::new(p, (1.0 - p) * s, phi1, phi2).unwrap();
            let b = FamilyParams { phi1: phi1 + 2.0 * PI, ..a };
            let c = FamilyParams { phi2: phi2 + 2.0 * PI, ..a };
            prop_assert!((z_tangle_closed(&a) - z_tangle_closed(&b)).abs() <= 1e-12);
            prop_assert!((z_tangle_closed(&a) - z_tangle_closed(&c)).abs() <= 1e-12);
        }
    }
}
