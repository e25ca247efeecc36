//! Entanglement and fidelity measures.
//!
//! Concurrence follows Wootters: with `rho~ = (Y⊗Y) rho* (Y⊗Y)` (conjugation
//! in the computational basis) and `l1 >= l2 >= l3 >= l4` the singular values
//! of `sqrt(rho) sqrt(rho~)`, `C = max(0, l1 - l2 - l3 - l4)`. The same `l_i`
//! are the square roots of the eigenvalues of `rho rho~`; that route is kept
//! as [`lambdas_from_eigenvalues`] for cross-checking.

use nalgebra::{Matrix4, SVD};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::qsim::{DensityMatrix, NoiseSpec, PureState, QuantumState};
use crate::wgs::{build_noisy_state, WeightedGraph};

/// Eigenvalues of `rho` below `-PSD_TOLERANCE` are rejected.
const PSD_TOLERANCE: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConcurrenceReport {
    pub value: f64,
    /// Nonincreasing, nonnegative.
    pub lambdas: [f64; 4],
}

fn two_qubit_matrix(rho: &DensityMatrix) -> Result<Matrix4<Complex64>> {
    if rho.num_qubits() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, found: rho.num_qubits() });
    }
    Ok(Matrix4::from_fn(|r, c| rho.elements()[(r, c)]))
}

/// `Y ⊗ Y`, which is real: anti-diagonal `(-1, 1, 1, -1)`.
fn yy() -> Matrix4<Complex64> {
    let mut m = Matrix4::zeros();
    for (r, v) in [(0, -1.0), (1, 1.0), (2, 1.0), (3, -1.0)] {
        m[(r, 3 - r)] = Complex64::new(v, 0.0);
    }
    m
}

/// Spin-flipped state `(Y⊗Y) rho* (Y⊗Y)`.
pub fn spin_flip(rho: &Matrix4<Complex64>) -> Matrix4<Complex64> {
    let s = yy();
    s * rho.map(|z| z.conj()) * s
}

/// Hermitian square root with eigenvalues clipped at zero.
fn hermitian_sqrt(m: &Matrix4<Complex64>) -> (Matrix4<Complex64>, f64) {
    let eig = m.symmetric_eigen();
    let min = eig.eigenvalues.iter().copied().fold(f64::INFINITY, f64::min);
    let d = eig.eigenvalues.map(|w| Complex64::new(w.max(0.0).sqrt(), 0.0));
    let v = &eig.eigenvectors;
    (v * Matrix4::from_diagonal(&d) * v.adjoint(), min)
}

fn sorted_desc(mut v: [f64; 4]) -> [f64; 4] {
    // stable: ties keep index order
    v.sort_by(|a, b| b.total_cmp(a));
    v
}

/// Singular values of `sqrt(rho) sqrt(rho~)`, descending.
pub fn lambdas_from_singular_values(rho: &DensityMatrix) -> Result<[f64; 4]> {
    let m = two_qubit_matrix(rho)?;
    let (sqrt_rho, min_eig) = hermitian_sqrt(&m);
    if min_eig < -PSD_TOLERANCE {
        return Err(Error::InvalidState(format!("density matrix has eigenvalue {min_eig:e}")));
    }
    let s = yy();
    let sqrt_tilde = s * sqrt_rho.map(|z| z.conj()) * s;
    let sv = SVD::new(sqrt_rho * sqrt_tilde, false, false).singular_values;
    Ok(sorted_desc([sv[0], sv[1], sv[2], sv[3]]))
}

/// Square roots of the eigenvalues of `rho rho~` (real parts, clipped at 0), descending.
///
/// Accurate for full-rank states. Near-pure states lose about half the digits
/// in the small `l_i`, which is why [`concurrence`] uses the singular-value route.
pub fn lambdas_from_eigenvalues(rho: &DensityMatrix) -> Result<[f64; 4]> {
    let m = two_qubit_matrix(rho)?;
    let product = m * spin_flip(&m);
    let eig = product
        .schur()
        .eigenvalues()
        .ok_or_else(|| Error::InvalidState("Schur form of rho rho~ is not triangular".into()))?;
    Ok(sorted_desc([0, 1, 2, 3].map(|i| eig[i].re.max(0.0).sqrt())))
}

pub fn concurrence(rho: &DensityMatrix) -> Result<ConcurrenceReport> {
    let lambdas = lambdas_from_singular_values(rho)?;
    let value = (lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3]).clamp(0.0, 1.0);
    Ok(ConcurrenceReport { value, lambdas })
}

/// `<psi|rho|psi>`, clamped to `[0, 1]`.
pub fn fidelity_with_pure(rho: &DensityMatrix, psi: &PureState) -> Result<f64> {
    Ok(rho.expectation_pure(psi)?.clamp(0.0, 1.0))
}

/// Concurrence of two noisy `|+>` qubits joined directly by one `CP(phi)`.
pub fn reference_concurrence(phi: f64, noise: &NoiseSpec) -> Result<f64> {
    let graph = WeightedGraph::new(2, &[(1, 2, phi)])?;
    Ok(concurrence(&build_noisy_state(&graph, noise)?)?.value)
}

/// `C - C_ref`; negative when the direct gate does better.
pub fn concurrence_advantage(protocol_c: f64, reference_c: f64) -> f64 {
    protocol_c - reference_c
}
