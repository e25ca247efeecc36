mod common;

use std::f64::consts::PI;

use wgs_ghz::metrics::{
    concurrence, concurrence_advantage, fidelity_with_pure, lambdas_from_eigenvalues, lambdas_from_singular_values,
    reference_concurrence,
};
use wgs_ghz::qsim::{Complex64, DensityMatrix, NoiseSpec, PureState, QuantumState};

#[test]
fn eigenvalue_and_singular_value_routes_agree_on_mixed_states() {
    let mut rng = common::rng(31);
    for i in 0..500 {
        let rho = common::random_density(&mut rng, 2, 2 + i % 3);
        let a = lambdas_from_singular_values(&rho).unwrap();
        let b = lambdas_from_eigenvalues(&rho).unwrap();
        for (x, y) in a.iter().zip(&b) {
            assert!((x - y).abs() < 1e-7, "sample {i}: {a:?} vs {b:?}");
        }
    }
}

#[test]
fn local_unitaries_leave_concurrence_unchanged() {
    let mut rng = common::rng(32);
    for i in 0..200 {
        let rho = if i % 2 == 0 {
            common::random_pure(&mut rng, 2).to_density()
        } else {
            common::random_density(&mut rng, 2, 3)
        };
        let c = concurrence(&rho).unwrap().value;
        let rotated = rho
            .apply_gate(1, &common::random_unitary(&mut rng))
            .unwrap()
            .apply_gate(2, &common::random_unitary(&mut rng))
            .unwrap();
        assert!((concurrence(&rotated).unwrap().value - c).abs() < 1e-10);
    }
}

#[test]
fn pure_state_concurrence_is_twice_the_determinant() {
    let mut rng = common::rng(33);
    for _ in 0..200 {
        let psi = common::random_pure(&mut rng, 2);
        let a = psi.amplitudes();
        let expected = 2.0 * (a[0] * a[3] - a[1] * a[2]).norm();
        assert!((concurrence(&psi.to_density()).unwrap().value - expected).abs() < 1e-10);
    }
}

#[test]
fn werner_states() {
    let bell = PureState::ghz(2, 0.0).unwrap().to_density();
    let mixed = DensityMatrix::maximally_mixed(2).unwrap();
    for k in 0..=50 {
        let w = k as f64 / 50.0;
        let m = bell.elements() * Complex64::new(w, 0.0) + mixed.elements() * Complex64::new(1.0 - w, 0.0);
        let c = concurrence(&DensityMatrix::new(2, m).unwrap()).unwrap().value;
        assert!((c - ((3.0 * w - 1.0) / 2.0).max(0.0)).abs() < 1e-10);
    }
}

#[test]
fn reference_concurrence_closed_form_and_noise_monotonicity() {
    let none = NoiseSpec::depolarizing(0.0).unwrap();
    for k in 0..=40 {
        let phi = -PI + 2.0 * PI * k as f64 / 40.0;
        assert!((reference_concurrence(phi, &none).unwrap() - (phi / 2.0).sin().abs()).abs() < 1e-12);
    }
    let mut last = f64::INFINITY;
    for k in 0..=10 {
        let c = reference_concurrence(0.8 * PI, &NoiseSpec::depolarizing(0.005 * k as f64).unwrap()).unwrap();
        assert!(c <= last);
        last = c;
    }
    assert_eq!(concurrence_advantage(0.9, 0.7), 0.9 - 0.7);
}

#[test]
fn fidelity_and_input_checks() {
    let bell = PureState::ghz(2, 0.0).unwrap();
    assert!((fidelity_with_pure(&bell.to_density(), &bell).unwrap() - 1.0).abs() < 1e-14);
    let three = PureState::plus(3).unwrap().to_density();
    assert!(concurrence(&three).is_err());
}
