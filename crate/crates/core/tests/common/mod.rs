#![allow(dead_code)]

use nalgebra::DMatrix;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use wgs_ghz::qsim::{Complex64, DensityMatrix, Gate, PureState};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

fn gaussian_complex(rng: &mut StdRng) -> Complex64 {
    // Box-Muller pair as real and imaginary parts.
    let u1: f64 = rng.random_range(f64::EPSILON..1.0);
    let u2: f64 = rng.random();
    let r = (-2.0 * u1.ln()).sqrt();
    let t = std::f64::consts::TAU * u2;
    Complex64::new(r * t.cos(), r * t.sin())
}

pub fn random_pure(rng: &mut StdRng, num_qubits: usize) -> PureState {
    let amps = (0..1usize << num_qubits).map(|_| gaussian_complex(rng)).collect();
    PureState::normalized(num_qubits, amps).expect("random vector is nonzero")
}

/// Random mixed state `G G^dag / tr` with a Ginibre matrix `G` of the given rank.
pub fn random_density(rng: &mut StdRng, num_qubits: usize, rank: usize) -> DensityMatrix {
    let dim = 1usize << num_qubits;
    let g = DMatrix::from_fn(dim, rank, |_, _| gaussian_complex(rng));
    let mut m = &g * g.adjoint();
    let tr = m.trace();
    m /= tr;
    let m = (&m + m.adjoint()) * Complex64::new(0.5, 0.0);
    DensityMatrix::new(num_qubits, m).expect("Ginibre construction is a valid state")
}

/// Haar-like random single-qubit unitary from Euler angles `Rz H Rz H Rz`.
pub fn random_unitary(rng: &mut StdRng) -> Gate {
    let mut angle = || rng.random_range(-std::f64::consts::PI..std::f64::consts::PI);
    let (a, b, c) = (angle(), angle(), angle());
    Gate::rz(a) * Gate::hadamard() * Gate::rz(b) * Gate::hadamard() * Gate::rz(c)
}
