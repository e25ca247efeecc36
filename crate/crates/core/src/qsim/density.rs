use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use super::{
    bit_of, check_register_size, insert_bit, single_qubit_purity, Branch, Gate, MeasurementBasis,
    Outcome, PureState, QuantumState, DISCARD_PURITY_TOLERANCE, NULL_BRANCH_PROBABILITY,
};
use crate::error::{Error, Result};

const HERMITIAN_TOLERANCE: f64 = 1e-12;
const TRACE_TOLERANCE: f64 = 1e-12;
/// Smallest eigenvalue accepted as positive semidefinite.
pub const PSD_TOLERANCE: f64 = 1e-10;

/// Hermitian, positive semidefinite, unit-trace operator on `num_qubits` qubits.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    num_qubits: usize,
    elements: DMatrix<Complex64>,
}

impl DensityMatrix {
    pub fn new(num_qubits: usize, elements: DMatrix<Complex64>) -> Result<Self> {
        check_register_size(num_qubits)?;
        let dim = 1usize << num_qubits;
        if elements.shape() != (dim, dim) {
            return Err(Error::InvalidState(format!(
                "expected a {dim}x{dim} matrix, got {:?}",
                elements.shape()
            )));
        }
        let rho = Self { num_qubits, elements };
        let herm = rho.hermiticity_deviation();
        if herm.is_nan() || herm > HERMITIAN_TOLERANCE {
            return Err(Error::InvalidState(format!("not Hermitian (deviation {herm:e})")));
        }
        let tr = rho.trace();
        if !((tr.re - 1.0).abs() <= TRACE_TOLERANCE && tr.im.abs() <= TRACE_TOLERANCE) {
            return Err(Error::InvalidState(format!("trace {tr} is not 1")));
        }
        let min = rho.min_eigenvalue();
        if min < -PSD_TOLERANCE {
            return Err(Error::InvalidState(format!("negative eigenvalue {min:e}")));
        }
        Ok(rho)
    }

    pub(crate) fn from_raw(num_qubits: usize, elements: DMatrix<Complex64>) -> Self {
        Self { num_qubits, elements }
    }

    /// `I / 2^N`.
    pub fn maximally_mixed(num_qubits: usize) -> Result<Self> {
        check_register_size(num_qubits)?;
        let dim = 1usize << num_qubits;
        let diag = DVector::from_element(dim, Complex64::new(1.0 / dim as f64, 0.0));
        Ok(Self::from_raw(num_qubits, DMatrix::from_diagonal(&diag)))
    }

    pub fn from_pure(state: &PureState) -> Self {
        state.to_density()
    }

    pub fn elements(&self) -> &DMatrix<Complex64> {
        &self.elements
    }

    pub fn dim(&self) -> usize {
        self.elements.nrows()
    }

    pub fn trace(&self) -> Complex64 {
        self.elements.trace()
    }

    /// `Tr(rho^2)`.
    pub fn purity(&self) -> f64 {
        self.elements.iter().map(|z| z.norm_sqr()).sum()
    }

    /// Max element deviation of `rho - rho†`.
    pub fn hermiticity_deviation(&self) -> f64 {
        let a = &self.elements;
        let mut worst: f64 = 0.0;
        for r in 0..a.nrows() {
            for c in r..a.ncols() {
                let d = (a[(r, c)] - a[(c, r)].conj()).norm();
                if d.is_nan() {
                    return f64::INFINITY;
                }
                worst = worst.max(d);
            }
        }
        worst
    }

    /// Eigenvalues of the Hermitian part, ascending.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let herm = (&self.elements + self.elements.adjoint()) * Complex64::new(0.5, 0.0);
        let mut vals: Vec<f64> = herm.symmetric_eigenvalues().iter().copied().collect();
        vals.sort_by(|a, b| a.total_cmp(b));
        vals
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues().first().copied().unwrap_or(f64::NAN)
    }

    pub fn max_abs_diff(&self, other: &DensityMatrix) -> f64 {
        if self.elements.shape() != other.elements.shape() {
            return f64::INFINITY;
        }
        self.elements
            .iter()
            .zip(other.elements.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// `<psi|rho|psi>`.
    pub fn expectation_pure(&self, psi: &PureState) -> Result<f64> {
        if psi.num_qubits() != self.num_qubits {
            return Err(Error::DimensionMismatch { expected: self.num_qubits, found: psi.num_qubits() });
        }
        let v = DVector::from_column_slice(psi.amplitudes());
        Ok((v.adjoint() * &self.elements * &v)[(0, 0)].re)
    }

    /// `M rho M†` for a single-qubit matrix `m` acting on bit `bit`.
    pub(crate) fn conjugate_local(&self, bit: usize, m: &[[Complex64; 2]; 2]) -> DMatrix<Complex64> {
        let dim = self.dim();
        let mask = 1usize << bit;
        let mut a = self.elements.clone();
        // rows: M rho
        for col in 0..dim {
            for i in (0..dim).filter(|i| i & mask == 0) {
                let j = i | mask;
                let (x, y) = (a[(i, col)], a[(j, col)]);
                a[(i, col)] = m[0][0] * x + m[0][1] * y;
                a[(j, col)] = m[1][0] * x + m[1][1] * y;
            }
        }
        // columns: (M rho) M†
        for i in (0..dim).filter(|i| i & mask == 0) {
            let j = i | mask;
            for row in 0..dim {
                let (x, y) = (a[(row, i)], a[(row, j)]);
                a[(row, i)] = x * m[0][0].conj() + y * m[0][1].conj();
                a[(row, j)] = x * m[1][0].conj() + y * m[1][1].conj();
            }
        }
        a
    }

    pub(crate) fn reduced_qubit(&self, bit: usize) -> [[Complex64; 2]; 2] {
        let mut r = [[Complex64::new(0.0, 0.0); 2]; 2];
        for rest in 0..self.dim() / 2 {
            for (a, row) in r.iter_mut().enumerate() {
                for (b, entry) in row.iter_mut().enumerate() {
                    *entry += self.elements[(insert_bit(rest, bit, a), insert_bit(rest, bit, b))];
                }
            }
        }
        r
    }

    /// Partial trace over one qubit, with no product-state check.
    pub fn partial_trace(&self, qubit: usize) -> Result<Self> {
        let bit = bit_of(qubit, self.num_qubits)?;
        if self.num_qubits == 1 {
            return Err(Error::InvalidState("cannot trace out the only qubit".into()));
        }
        let half = self.dim() / 2;
        let m = DMatrix::from_fn(half, half, |r, c| {
            self.elements[(insert_bit(r, bit, 0), insert_bit(c, bit, 0))]
                + self.elements[(insert_bit(r, bit, 1), insert_bit(c, bit, 1))]
        });
        Ok(Self::from_raw(self.num_qubits - 1, m))
    }
}

impl QuantumState for DensityMatrix {
    fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    fn apply_gate(&self, qubit: usize, gate: &Gate) -> Result<Self> {
        let bit = bit_of(qubit, self.num_qubits)?;
        Ok(Self::from_raw(self.num_qubits, self.conjugate_local(bit, &gate.matrix())))
    }

    fn apply_controlled_phase(&self, control: usize, target: usize, phi: f64) -> Result<Self> {
        let cb = bit_of(control, self.num_qubits)?;
        let tb = bit_of(target, self.num_qubits)?;
        if cb == tb {
            return Err(Error::SameQubit(control));
        }
        let mask = (1usize << cb) | (1usize << tb);
        let phase = Complex64::from_polar(1.0, phi);
        let d = |i: usize| if i & mask == mask { phase } else { Complex64::new(1.0, 0.0) };
        let m = DMatrix::from_fn(self.dim(), self.dim(), |r, c| {
            self.elements[(r, c)] * d(r) * d(c).conj()
        });
        Ok(Self::from_raw(self.num_qubits, m))
    }

    fn measure_qubit(&self, qubit: usize, basis: &MeasurementBasis) -> Result<[Branch<Self>; 2]> {
        let bit = bit_of(qubit, self.num_qubits)?;
        let branch = |outcome: Outcome| {
            let projected = self.conjugate_local(bit, &basis.projector(outcome));
            let probability = projected.trace().re;
            let state = (probability >= NULL_BRANCH_PROBABILITY).then(|| {
                let mut m = projected / Complex64::new(probability, 0.0);
                // restore exact Hermiticity lost to rounding
                m = (&m + m.adjoint()) * Complex64::new(0.5, 0.0);
                Self::from_raw(self.num_qubits, m)
            });
            Branch { outcome, probability, state }
        };
        Ok([branch(Outcome::Plus), branch(Outcome::Minus)])
    }

    fn discard_qubit(&self, qubit: usize) -> Result<Self> {
        let bit = bit_of(qubit, self.num_qubits)?;
        let purity = single_qubit_purity(self.reduced_qubit(bit));
        if purity < 1.0 - DISCARD_PURITY_TOLERANCE {
            return Err(Error::EntangledQubit { qubit, purity });
        }
        self.partial_trace(qubit)
    }

    fn to_density(&self) -> DensityMatrix {
        self.clone()
    }
}
