use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use threetangle_core::analytic::{solve_p0, Thresholds};
use threetangle_core::bloch::{vanishing_by_polyhedron, DEFAULT_MEMBERSHIP_TOL};
use threetangle_core::family::{optimal_decomposition, rho_n};
use threetangle_core::states::{density_from_ensemble, partial_trace, partial_trace_pair, trace_distance};
use threetangle_core::{DensityMatrix, Ensemble, PureState3, Qubit, QubitPair, C64};

fn random_state(rng: &mut ChaCha8Rng) -> PureState3 {
    let mut a = [C64::new(0.0, 0.0); 8];
    for x in a.iter_mut() {
        *x = C64::new(StandardNormal.sample(rng), StandardNormal.sample(rng));
    }
    PureState3::from_amplitudes(a).unwrap()
}

fn random_ensemble(rng: &mut ChaCha8Rng, size: usize) -> Ensemble {
    let raw: Vec<f64> = (0..size).map(|_| rand::Rng::random::<f64>(rng) + 0.01).collect();
    let total: f64 = raw.iter().sum();
    Ensemble::new(raw.iter().map(|w| (w / total, random_state(rng))).collect()).unwrap()
}

fn max_diff(a: &DensityMatrix, b: &DensityMatrix) -> f64 {
    a.matrix().max_abs_diff(b.matrix())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn partial_trace_commutes_with_mixing(seed in any::<u64>(), size in 1usize..6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ens = random_ensemble(&mut rng, size);
        let rho = density_from_ensemble(&ens);
        for q in [Qubit::A, Qubit::B, Qubit::C] {
            let parts: Vec<(f64, DensityMatrix)> = ens.members().iter().map(|(w, s)| (*w, partial_trace(&s.projector(), q).unwrap())).collect();
            let refs: Vec<(f64, &DensityMatrix)> = parts.iter().map(|(w, d)| (*w, d)).collect();
            prop_assert!(max_diff(&partial_trace(&rho, q).unwrap(), &DensityMatrix::mixture(&refs).unwrap()) <= 1e-12);
        }
        for pair in [QubitPair::AB, QubitPair::AC, QubitPair::BC] {
            let parts: Vec<(f64, DensityMatrix)> = ens.members().iter().map(|(w, s)| (*w, partial_trace_pair(&s.projector(), pair).unwrap())).collect();
            let refs: Vec<(f64, &DensityMatrix)> = parts.iter().map(|(w, d)| (*w, d)).collect();
            prop_assert!(max_diff(&partial_trace_pair(&rho, pair).unwrap(), &DensityMatrix::mixture(&refs).unwrap()) <= 1e-12);
        }
    }

    #[test]
    fn trace_distance_is_a_metric(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let [a, b, c] = [0, 1, 2].map(|k| density_from_ensemble(&random_ensemble(&mut rng, 1 + k)));
        let ab = trace_distance(&a, &b).unwrap();
        let bc = trace_distance(&b, &c).unwrap();
        let ac = trace_distance(&a, &c).unwrap();
        prop_assert!(ac <= ab + bc + 1e-10);
        prop_assert!((ab - trace_distance(&b, &a).unwrap()).abs() <= 1e-12);
        prop_assert!(trace_distance(&a, &a).unwrap() <= 1e-12);
        prop_assert!((0.0..=1.0 + 1e-12).contains(&ab));
    }

    #[test]
    fn mixtures_are_valid_density_matrices(seed in any::<u64>(), size in 1usize..9) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rho = density_from_ensemble(&random_ensemble(&mut rng, size));
        prop_assert!(DensityMatrix::new(rho.matrix().clone()).is_ok());
    }

    #[test]
    fn optimal_decompositions_reconstruct(p in 0.0f64..=1.0, idx in 0usize..4) {
        let n = [1.0, 2.0, 3.0, 10.0][idx];
        let th = Thresholds::compute(n).unwrap();
        let ens = optimal_decomposition(p, n, &th).unwrap();
        prop_assert!(trace_distance(&density_from_ensemble(&ens), &rho_n(p, n).unwrap()).unwrap() <= 1e-12);
    }
}

#[test]
fn polyhedron_decision_matches_zero_region() {
    for n in [1.0, 2.0, 3.0, 10.0] {
        let p0 = solve_p0(n).unwrap();
        for k in 0..=100 {
            let p = k as f64 / 100.0;
            let m = vanishing_by_polyhedron(&rho_n(p, n).unwrap(), n, p0, DEFAULT_MEMBERSHIP_TOL).unwrap();
            assert_eq!(m.inside, p <= p0 + 1e-6, "n={n} p={p} residual={}", m.residual);
        }
        let m = vanishing_by_polyhedron(&rho_n(p0, n).unwrap(), n, p0, DEFAULT_MEMBERSHIP_TOL).unwrap();
        assert!(m.inside);
    }
}
