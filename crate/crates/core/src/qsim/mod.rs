//! Dense state-vector and density-matrix simulation for small registers.
//!
//! Qubits are numbered from 1. Qubit `k` is bit `k - 1` of the amplitude
//! index, so qubit 1 is the least-significant bit. Every operation returns a
//! new state and leaves its input untouched.

mod basis;
mod channel;
mod density;
mod gate;
mod pure;

pub use basis::{MeasurementBasis, Outcome};
pub use channel::{apply_channel, NoiseKind, NoiseSpec};
pub use density::DensityMatrix;
pub use gate::Gate;
pub use pure::PureState;

use crate::error::{Error, Result};

pub use num_complex::Complex64;

/// Registers larger than this are rejected.
pub const MAX_QUBITS: usize = 12;

/// Branch probabilities below this are reported without a post-state.
pub const NULL_BRANCH_PROBABILITY: f64 = 1e-14;

/// Reduced-purity tolerance used when discarding a measured qubit.
pub const DISCARD_PURITY_TOLERANCE: f64 = 1e-10;

/// One outcome of a projective single-qubit measurement.
#[derive(Clone, Debug)]
pub struct Branch<S> {
    pub outcome: Outcome,
    pub probability: f64,
    /// Normalized post-measurement state, or `None` for a null branch.
    pub state: Option<S>,
}

/// Operations shared by the pure and mixed representations.
pub trait QuantumState: Clone + Send + Sync + Sized {
    fn num_qubits(&self) -> usize;

    /// Applies `gate` to `qubit`, identity elsewhere.
    fn apply_gate(&self, qubit: usize, gate: &Gate) -> Result<Self>;

    /// Multiplies every basis ket with both qubits set by `e^{i phi}`.
    fn apply_controlled_phase(&self, control: usize, target: usize, phi: f64) -> Result<Self>;

    /// Returns the `+1` and `-1` branches, in that order.
    fn measure_qubit(&self, qubit: usize, basis: &MeasurementBasis) -> Result<[Branch<Self>; 2]>;

    /// Removes a qubit that is in a product state with the rest of the
    /// register. Higher-numbered qubits shift down by one.
    fn discard_qubit(&self, qubit: usize) -> Result<Self>;

    fn to_density(&self) -> DensityMatrix;
}

/// Validates a 1-based qubit index and returns its bit position.
pub(crate) fn bit_of(qubit: usize, num_qubits: usize) -> Result<usize> {
    if qubit == 0 || qubit > num_qubits {
        return Err(Error::QubitOutOfRange { qubit, num_qubits });
    }
    Ok(qubit - 1)
}

/// Index on the full register for index `rest` on the register with bit
/// `bit` removed, with that bit set to `value`.
#[inline]
pub(crate) fn insert_bit(rest: usize, bit: usize, value: usize) -> usize {
    let low = rest & ((1 << bit) - 1);
    let high = (rest >> bit) << (bit + 1);
    high | (value << bit) | low
}

pub(crate) fn check_register_size(num_qubits: usize) -> Result<()> {
    if num_qubits == 0 || num_qubits > MAX_QUBITS {
        return Err(Error::InvalidState(format!(
            "register size {num_qubits} outside 1..={MAX_QUBITS}"
        )));
    }
    Ok(())
}

/// Purity `Tr(r^2)` of a single-qubit density matrix given as `[[r00, r01], [r10, r11]]`.
pub(crate) fn single_qubit_purity(r: [[Complex64; 2]; 2]) -> f64 {
    r[0][0].norm_sqr() + r[1][1].norm_sqr() + r[0][1].norm_sqr() + r[1][0].norm_sqr()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn insert_bit_round_trips() {
        // bit 1 inserted into 0b11 -> 0b101 / 0b111
        assert_eq!(insert_bit(0b11, 1, 0), 0b101);
        assert_eq!(insert_bit(0b11, 1, 1), 0b111);
        assert_eq!(insert_bit(0b1, 0, 1), 0b11);
        assert_eq!(insert_bit(0b10, 2, 1), 0b110);
    }

    #[test]
    fn qubit_index_checked() {
        assert!(bit_of(0, 3).is_err());
        assert!(bit_of(4, 3).is_err());
        assert_eq!(bit_of(3, 3).unwrap(), 2);
    }
}
