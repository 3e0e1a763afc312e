mod common;

use num_complex::Complex64;
use orbit_forge::rng::{stream, substream};
use orbit_forge::{
    bracket, canonical_3q, classify_stabilizer, fingerprint, lu_equivalent, orbit_dimension, parse_state,
    random_state, schmidt2, schmidt_2q, stabilizer_basis, LieElement, LocalUnitary, Mode, OptimizerConfig,
    QubitState, RankPolicy,
};
use proptest::prelude::*;

/// Random state with a seeded subset of amplitudes zeroed, so degenerate
/// orbits show up alongside generic ones.
fn sparse_state(n: usize, seed: u64) -> QubitState {
    let mut rng = stream(seed);
    let mut amps = common::gaussian_amps(1 << n, &mut rng);
    let mask = seed.rotate_left(17);
    for (i, a) in amps.iter_mut().enumerate() {
        if (mask >> (i % 64)) & 1 == 1 {
            *a = Complex64::new(0.0, 0.0);
        }
    }
    if amps.iter().all(|a| a.norm() == 0.0) {
        amps[0] = Complex64::new(1.0, 0.0);
    }
    QubitState::from_amplitudes(amps).unwrap()
}

fn lie(n: usize, seed: u64) -> LieElement {
    let mut rng = stream(seed);
    let coords = (0..3 * n + 1).map(|_| common::normal(&mut rng)).collect();
    LieElement::from_coords(n, coords, "X").unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn fingerprint_is_lu_invariant(n in 1usize..=4, seed: u64) {
        let psi = random_state(n, seed).unwrap();
        let v = LocalUnitary::random(n, &mut substream(seed, 1));
        let gap = fingerprint(&psi).unwrap().max_gap(&fingerprint(&v.apply(&psi).unwrap()).unwrap());
        prop_assert!(gap <= 1e-9, "gap {gap}");
    }

    #[test]
    fn rank_nullity_and_orbit_invariance(n in 1usize..=4, seed: u64) {
        let psi = sparse_state(n, seed);
        let policy = RankPolicy::default();
        let dim = orbit_dimension(&psi, Mode::Reduced, policy);
        prop_assert_eq!(dim + stabilizer_basis(&psi, Mode::Reduced, policy).unwrap().dim(), 3 * n + 1);
        prop_assert_eq!(dim + stabilizer_basis(&psi, Mode::Full, policy).unwrap().dim(), 4 * n);
        prop_assert_eq!(dim, common::orbit_rank(n, psi.amplitudes()));
        let moved = LocalUnitary::random(n, &mut substream(seed, 2)).apply(&psi).unwrap();
        prop_assert_eq!(orbit_dimension(&moved, Mode::Reduced, policy), dim);
    }

    #[test]
    fn state_json_round_trips_exactly(n in 1usize..=5, seed: u64) {
        let psi = sparse_state(n, seed);
        prop_assert_eq!(parse_state(&psi.to_json()).unwrap(), psi.clone());
        prop_assert_eq!(QubitState::from_embedding(&psi.embed_real()).unwrap(), psi);
    }

    #[test]
    fn local_unitary_inverse(n in 1usize..=4, seed: u64) {
        let psi = random_state(n, seed).unwrap();
        let v = LocalUnitary::random(n, &mut substream(seed, 3));
        let back = v.inverse().apply(&v.apply(&psi).unwrap()).unwrap();
        prop_assert!(back.max_abs_diff(&psi) <= 1e-14);
    }

    #[test]
    fn schmidt_form_reconstructs(seed: u64, scale in 0.1f64..10.0) {
        let psi = random_state(2, seed).unwrap().scaled(Complex64::new(scale, 0.0));
        let form = schmidt_2q(&psi).unwrap();
        prop_assert!((form.norm - scale).abs() <= 1e-12 * scale);
        prop_assert!((0.0..=std::f64::consts::FRAC_PI_4 + 1e-15).contains(&form.phi));
        let moved = form.local_unitary().apply(&psi).unwrap();
        prop_assert!(moved.max_abs_diff(&schmidt2(form.norm, form.phi)) <= 1e-12 * scale);
    }

    #[test]
    fn bracket_is_a_lie_bracket(n in 1usize..=4, seed: u64) {
        let (x, y, z) = (lie(n, seed), lie(n, seed ^ 1), lie(n, seed ^ 2));
        let xy = bracket(&x, &y).unwrap();
        let yx = bracket(&y, &x).unwrap();
        for (a, b) in xy.coords().iter().zip(yx.coords()) {
            prop_assert!((a + b).abs() <= 1e-12);
        }
        let terms = [
            bracket(&x, &bracket(&y, &z).unwrap()).unwrap(),
            bracket(&y, &bracket(&z, &x).unwrap()).unwrap(),
            bracket(&z, &bracket(&x, &y).unwrap()).unwrap(),
        ];
        for k in 0..3 * n + 1 {
            let s: f64 = terms.iter().map(|t| t.coords()[k]).sum();
            prop_assert!(s.abs() <= 1e-10);
        }
    }

    #[test]
    fn stabilizer_label_is_lu_invariant(seed: u64) {
        let psi = sparse_state(3, seed);
        let moved = LocalUnitary::random(3, &mut substream(seed, 4)).apply(&psi).unwrap();
        let a = classify_stabilizer(&psi, RankPolicy::default()).unwrap();
        let b = classify_stabilizer(&moved, RankPolicy::default()).unwrap();
        prop_assert_eq!((a.dim, a.derived_dim, a.label), (b.dim, b.derived_dim, b.label));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn lu_equivalence_is_reflexive_and_symmetric(n in 2usize..=3, seed: u64) {
        let psi = random_state(n, seed).unwrap();
        let phi = LocalUnitary::random(n, &mut substream(seed, 5)).apply(&psi).unwrap();
        let config = OptimizerConfig::with_seed(seed);
        let same = lu_equivalent(&psi, &psi, true, config).unwrap();
        prop_assert!(same.fingerprints_match && same.witness.is_some());
        let there = lu_equivalent(&psi, &phi, true, config).unwrap();
        let back = lu_equivalent(&phi, &psi, true, config).unwrap();
        prop_assert!(there.fingerprints_match && back.fingerprints_match);
        prop_assert!(there.witness.is_some() && back.witness.is_some());
        prop_assert_eq!(there.max_component_gap, back.max_component_gap);
    }

    #[test]
    fn canonical_form_is_constant_on_orbits(seed: u64) {
        let psi = random_state(3, seed).unwrap();
        let phi = LocalUnitary::random(3, &mut substream(seed, 6)).apply(&psi).unwrap();
        let a = canonical_3q(&psi, OptimizerConfig::with_seed(seed)).unwrap();
        let b = canonical_3q(&phi, OptimizerConfig::with_seed(seed ^ 9)).unwrap();
        prop_assert!(a.residual <= 1e-8 && b.residual <= 1e-8);
        let gap = fingerprint(&a.canonical_state()).unwrap().max_gap(&fingerprint(&b.canonical_state()).unwrap());
        prop_assert!(gap <= 1e-8, "gap {gap}");
    }
}
