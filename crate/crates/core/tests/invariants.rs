//! Cross-module invariants: norm preservation under application, unitarity
//! of every construction at small registers, the W-operator closed form over
//! seeded oracles, and query-metadata pins.

use ampforge::circuits::{
    build_controlled_copy, build_controlled_prep, build_diag_encoding,
    build_diag_encoding_real_part, build_g, build_middle_layer, build_reflection, build_sin_ladder,
    build_w, w_action_formula, AmplitudePart, ComplexEncodingMode, MiddleGate,
};
use ampforge::linalg::{l2_distance, StateVector, EXACT_TOL};
use ampforge::sampling::{random_complex_oracle, random_complex_state, random_real_oracle};

#[test]
fn apply_preserves_norm_for_seeded_pairs() {
    // 1000 seeded (circuit, state) pairs stay normalized to 1e-12
    let mut checked = 0usize;
    let mut seed = 0u64;
    while checked < 1000 {
        let n = 1 + (seed as usize % 3);
        let oracle = random_complex_oracle(n, seed).unwrap();
        let w = build_w(&oracle, AmplitudePart::Real).unwrap();
        for k in 0..1usize << (2 * n + 1) {
            if checked >= 1000 {
                break;
            }
            let state = random_complex_state(2 * n + 1, seed.wrapping_add(k as u64 + 999)).unwrap();
            let out = w.apply(&state).unwrap();
            let norm: f64 = out
                .amplitudes()
                .iter()
                .map(|a| a.norm_sqr())
                .sum::<f64>()
                .sqrt();
            assert!((norm - 1.0).abs() <= 1e-12, "seed={seed} k={k} norm={norm}");
            checked += 1;
        }
        seed += 1;
    }
}

#[test]
fn constructions_are_unitary_at_small_registers() {
    // every named construction passes the unitarity gate up to 6 total qubits
    for n in 1..=2usize {
        let oracle = random_complex_oracle(n, 31 + n as u64).unwrap();
        for circuit in [
            build_reflection(n).unwrap(),
            build_middle_layer(n, MiddleGate::Z).unwrap(),
            build_middle_layer(n, MiddleGate::H).unwrap(),
            build_middle_layer(n, MiddleGate::S).unwrap(),
            build_controlled_prep(&oracle).unwrap(),
            build_controlled_copy(n).unwrap(),
            build_w(&oracle, AmplitudePart::Real).unwrap(),
            build_w(&oracle, AmplitudePart::Imaginary).unwrap(),
            build_g(&oracle, AmplitudePart::Real).unwrap(),
        ] {
            assert!(circuit.unitarity_deviation().unwrap() <= EXACT_TOL);
        }
        for part in [AmplitudePart::Real, AmplitudePart::Imaginary] {
            let be = build_diag_encoding_real_part(&oracle, part).unwrap();
            assert!(be.unitary().unitarity_deviation().unwrap() <= EXACT_TOL);
        }
        if n == 1 {
            let lcu = build_diag_encoding(&oracle, ComplexEncodingMode::LinearCombination).unwrap();
            assert!(lcu.unitary().unitarity_deviation().unwrap() <= EXACT_TOL);
        }
        let dil = build_diag_encoding(&oracle, ComplexEncodingMode::Dilation).unwrap();
        assert!(dil.unitary().unitarity_deviation().unwrap() <= EXACT_TOL);
    }
    for n in 1..=5usize {
        let ladder = build_sin_ladder(n).unwrap();
        assert!(ladder.unitary().unitarity_deviation().unwrap() <= EXACT_TOL);
    }
}

#[test]
fn w_action_closed_form_sweep() {
    // 20 seeded oracles, n <= 4, both parts, all basis inputs
    for trial in 0..20u64 {
        let n = 1 + (trial as usize % 4);
        let oracle = random_complex_oracle(n, 700 + trial).unwrap();
        let psi = oracle.state().unwrap();
        for part in [AmplitudePart::Real, AmplitudePart::Imaginary] {
            let w = build_w(&oracle, part).unwrap();
            for k in 0..1usize << n {
                let out = w.apply(&StateVector::basis(2 * n + 1, k).unwrap()).unwrap();
                let want = w_action_formula(psi.amplitudes(), k, part);
                let dist = l2_distance(out.amplitudes(), &want).unwrap();
                assert!(dist <= EXACT_TOL, "trial={trial} n={n} k={k}: {dist:.3e}");
            }
        }
    }
}

#[test]
fn values_are_shareable_across_threads() {
    fn check<T: Send + Sync>() {}
    check::<ampforge::linalg::StateVector>();
    check::<ampforge::linalg::UnnormalizedVector>();
    check::<ampforge::linalg::UnitaryCircuit>();
    check::<ampforge::blockenc::BlockEncoding>();
    check::<ampforge::blockenc::Spbe>();
    check::<ampforge::circuits::StatePrepOracle>();
    check::<ampforge::poly::Polynomial>();
    check::<ampforge::poly::library::CertifiedApproximation>();
    check::<ampforge::engine::TransformReport>();
}

#[test]
fn query_metadata_pins() {
    let oracle = random_real_oracle(2, 5).unwrap();
    assert_eq!(
        build_w(&oracle, AmplitudePart::Real)
            .unwrap()
            .controlled_u_queries(),
        1
    );
    assert_eq!(
        build_g(&oracle, AmplitudePart::Real)
            .unwrap()
            .controlled_u_queries(),
        2
    );
    let be = build_diag_encoding_real_part(&oracle, AmplitudePart::Real).unwrap();
    assert_eq!(be.unitary().controlled_u_queries(), 6);
    assert_eq!(be.ancillas(), 4); // n + 2
    let complex = random_complex_oracle(2, 5).unwrap();
    let lcu = build_diag_encoding(&complex, ComplexEncodingMode::LinearCombination).unwrap();
    assert_eq!(lcu.unitary().controlled_u_queries(), 12);
    assert_eq!(lcu.ancillas(), 5); // n + 3
    assert_eq!(lcu.alpha(), 2.0);
}
