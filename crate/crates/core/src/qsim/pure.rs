use nalgebra::DMatrix;
use num_complex::Complex64;

use super::{
    bit_of, check_register_size, insert_bit, single_qubit_purity, Branch, DensityMatrix, Gate,
    MeasurementBasis, Outcome, QuantumState, DISCARD_PURITY_TOLERANCE, NULL_BRANCH_PROBABILITY,
};
use crate::error::{Error, Result};

const NORM_TOLERANCE: f64 = 1e-12;

/// Normalized amplitude vector over `num_qubits` qubits.
#[derive(Clone, Debug, PartialEq)]
pub struct PureState {
    num_qubits: usize,
    amplitudes: Vec<Complex64>,
}

impl PureState {
    /// Validates length `2^num_qubits` and unit norm within `1e-12`.
    pub fn new(num_qubits: usize, amplitudes: Vec<Complex64>) -> Result<Self> {
        check_register_size(num_qubits)?;
        if amplitudes.len() != 1 << num_qubits {
            return Err(Error::InvalidState(format!(
                "expected {} amplitudes for {num_qubits} qubits, got {}",
                1usize << num_qubits,
                amplitudes.len()
            )));
        }
        let norm_sqr: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if norm_sqr.is_nan() || (norm_sqr - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::InvalidState(format!("squared norm {norm_sqr} is not 1")));
        }
        Ok(Self { num_qubits, amplitudes })
    }

    /// Rescales `amplitudes` to unit norm before validating.
    pub fn normalized(num_qubits: usize, mut amplitudes: Vec<Complex64>) -> Result<Self> {
        let norm = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm.is_nan() || norm <= 0.0 {
            return Err(Error::InvalidState("zero vector cannot be normalized".into()));
        }
        amplitudes.iter_mut().for_each(|a| *a /= norm);
        Self::new(num_qubits, amplitudes)
    }

    /// Computational basis ket `|index>`.
    pub fn basis(num_qubits: usize, index: usize) -> Result<Self> {
        check_register_size(num_qubits)?;
        let dim = 1 << num_qubits;
        if index >= dim {
            return Err(Error::InvalidState(format!("basis index {index} >= {dim}")));
        }
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); dim];
        amplitudes[index] = Complex64::new(1.0, 0.0);
        Ok(Self { num_qubits, amplitudes })
    }

    /// `|+>^{⊗N}`.
    pub fn plus(num_qubits: usize) -> Result<Self> {
        check_register_size(num_qubits)?;
        let dim = 1usize << num_qubits;
        let a = Complex64::new((dim as f64).sqrt().recip(), 0.0);
        Ok(Self { num_qubits, amplitudes: vec![a; dim] })
    }

    /// `(|0...0> + e^{i phase}|1...1>)/sqrt(2)`.
    pub fn ghz(num_qubits: usize, phase: f64) -> Result<Self> {
        check_register_size(num_qubits)?;
        let dim = 1usize << num_qubits;
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); dim];
        amplitudes[0] = Complex64::new(h, 0.0);
        amplitudes[dim - 1] = Complex64::from_polar(h, phase);
        Ok(Self { num_qubits, amplitudes })
    }

    /// Tensor product of single-qubit states; `qubits[0]` is qubit 1.
    pub fn product(qubits: &[[Complex64; 2]]) -> Result<Self> {
        check_register_size(qubits.len())?;
        let n = qubits.len();
        let amplitudes = (0..1usize << n)
            .map(|idx| {
                qubits
                    .iter()
                    .enumerate()
                    .map(|(bit, q)| q[(idx >> bit) & 1])
                    .product::<Complex64>()
            })
            .collect();
        Self::normalized(n, amplitudes)
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn inner(&self, other: &PureState) -> Result<Complex64> {
        if self.num_qubits != other.num_qubits {
            return Err(Error::DimensionMismatch {
                expected: self.num_qubits,
                found: other.num_qubits,
            });
        }
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// `|<self|other>|^2`; insensitive to global phase.
    pub fn fidelity(&self, other: &PureState) -> Result<f64> {
        Ok(self.inner(other)?.norm_sqr())
    }

    /// Contracts `qubit` with the bra `<v|`, leaving the unnormalized
    /// amplitudes on the remaining qubits.
    pub fn project_out(&self, qubit: usize, v: [Complex64; 2]) -> Result<Vec<Complex64>> {
        let bit = bit_of(qubit, self.num_qubits)?;
        let (b0, b1) = (v[0].conj(), v[1].conj());
        Ok((0..self.dim() / 2)
            .map(|r| {
                b0 * self.amplitudes[insert_bit(r, bit, 0)]
                    + b1 * self.amplitudes[insert_bit(r, bit, 1)]
            })
            .collect())
    }

    /// Applies a diagonal phase to every amplitude; `phases(index)` gives the phase angle.
    pub(crate) fn apply_diagonal(&self, phases: impl Fn(usize) -> f64) -> Self {
        let amplitudes = self
            .amplitudes
            .iter()
            .enumerate()
            .map(|(i, a)| {
                let p = phases(i);
                if p == 0.0 {
                    *a
                } else {
                    a * Complex64::from_polar(1.0, p)
                }
            })
            .collect();
        Self { num_qubits: self.num_qubits, amplitudes }
    }

    fn apply_local(&self, bit: usize, m: &[[Complex64; 2]; 2]) -> Vec<Complex64> {
        let mut out = self.amplitudes.clone();
        let mask = 1usize << bit;
        for i in 0..self.dim() {
            if i & mask == 0 {
                let j = i | mask;
                let (a0, a1) = (self.amplitudes[i], self.amplitudes[j]);
                out[i] = m[0][0] * a0 + m[0][1] * a1;
                out[j] = m[1][0] * a0 + m[1][1] * a1;
            }
        }
        out
    }

    /// Reduced density matrix of one qubit.
    pub(crate) fn reduced_qubit(&self, bit: usize) -> [[Complex64; 2]; 2] {
        let mut r = [[Complex64::new(0.0, 0.0); 2]; 2];
        for rest in 0..self.dim() / 2 {
            let a0 = self.amplitudes[insert_bit(rest, bit, 0)];
            let a1 = self.amplitudes[insert_bit(rest, bit, 1)];
            r[0][0] += a0 * a0.conj();
            r[0][1] += a0 * a1.conj();
            r[1][0] += a1 * a0.conj();
            r[1][1] += a1 * a1.conj();
        }
        r
    }
}

impl QuantumState for PureState {
    fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    fn apply_gate(&self, qubit: usize, gate: &Gate) -> Result<Self> {
        let bit = bit_of(qubit, self.num_qubits)?;
        Ok(Self { num_qubits: self.num_qubits, amplitudes: self.apply_local(bit, &gate.matrix()) })
    }

    fn apply_controlled_phase(&self, control: usize, target: usize, phi: f64) -> Result<Self> {
        let cb = bit_of(control, self.num_qubits)?;
        let tb = bit_of(target, self.num_qubits)?;
        if cb == tb {
            return Err(Error::SameQubit(control));
        }
        let mask = (1usize << cb) | (1usize << tb);
        Ok(self.apply_diagonal(|i| if i & mask == mask { phi } else { 0.0 }))
    }

    fn measure_qubit(&self, qubit: usize, basis: &MeasurementBasis) -> Result<[Branch<Self>; 2]> {
        let bit = bit_of(qubit, self.num_qubits)?;
        let branch = |outcome: Outcome| {
            let mut amplitudes = self.apply_local(bit, &basis.projector(outcome));
            let probability: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
            let state = (probability >= NULL_BRANCH_PROBABILITY).then(|| {
                let norm = probability.sqrt();
                amplitudes.iter_mut().for_each(|a| *a /= norm);
                Self { num_qubits: self.num_qubits, amplitudes }
            });
            Branch { outcome, probability, state }
        };
        Ok([branch(Outcome::Plus), branch(Outcome::Minus)])
    }

    fn discard_qubit(&self, qubit: usize) -> Result<Self> {
        let bit = bit_of(qubit, self.num_qubits)?;
        if self.num_qubits == 1 {
            return Err(Error::InvalidState("cannot discard the only qubit".into()));
        }
        let r = self.reduced_qubit(bit);
        let purity = single_qubit_purity(r);
        if purity < 1.0 - DISCARD_PURITY_TOLERANCE {
            return Err(Error::EntangledQubit { qubit, purity });
        }
        // For a product state any slice with nonzero weight is proportional to the remainder.
        let value = if r[0][0].re >= r[1][1].re { 0 } else { 1 };
        let amplitudes: Vec<Complex64> = (0..self.dim() / 2)
            .map(|rest| self.amplitudes[insert_bit(rest, bit, value)])
            .collect();
        Self::normalized(self.num_qubits - 1, amplitudes)
    }

    fn to_density(&self) -> DensityMatrix {
        let dim = self.dim();
        let m = DMatrix::from_fn(dim, dim, |r, c| self.amplitudes[r] * self.amplitudes[c].conj());
        DensityMatrix::from_raw(self.num_qubits, m)
    }
}
