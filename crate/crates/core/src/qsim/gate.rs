use std::f64::consts::FRAC_1_SQRT_2;
use std::ops::Mul;

use num_complex::Complex64;

use crate::error::{Error, Result};

const UNITARY_TOLERANCE: f64 = 1e-12;

/// A single-qubit unitary in the computational basis, `m[row][col]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Gate {
    m: [[Complex64; 2]; 2],
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

impl Gate {
    /// Checks unitarity to within `1e-12` (max element of `U†U - I`).
    pub fn new(m: [[Complex64; 2]; 2]) -> Result<Self> {
        let deviation = unitarity_deviation(&m);
        if deviation.is_nan() || deviation > UNITARY_TOLERANCE {
            return Err(Error::NonUnitaryGate { deviation });
        }
        Ok(Self { m })
    }

    pub fn identity() -> Self {
        Self { m: [[c(1., 0.), c(0., 0.)], [c(0., 0.), c(1., 0.)]] }
    }

    pub fn pauli_x() -> Self {
        Self { m: [[c(0., 0.), c(1., 0.)], [c(1., 0.), c(0., 0.)]] }
    }

    pub fn pauli_y() -> Self {
        Self { m: [[c(0., 0.), c(0., -1.)], [c(0., 1.), c(0., 0.)]] }
    }

    pub fn pauli_z() -> Self {
        Self { m: [[c(1., 0.), c(0., 0.)], [c(0., 0.), c(-1., 0.)]] }
    }

    pub fn hadamard() -> Self {
        let h = FRAC_1_SQRT_2;
        Self { m: [[c(h, 0.), c(h, 0.)], [c(h, 0.), c(-h, 0.)]] }
    }

    /// `diag(1, i)`.
    pub fn s() -> Self {
        Self::phase(std::f64::consts::FRAC_PI_2)
    }

    /// `S(phi) = diag(1, e^{i phi})`.
    pub fn phase(phi: f64) -> Self {
        Self { m: [[c(1., 0.), c(0., 0.)], [c(0., 0.), Complex64::from_polar(1.0, phi)]] }
    }

    /// `R_z(phi) = exp(-i phi Z / 2) = diag(e^{-i phi/2}, e^{i phi/2})`.
    pub fn rz(phi: f64) -> Self {
        Self {
            m: [
                [Complex64::from_polar(1.0, -phi / 2.0), c(0., 0.)],
                [c(0., 0.), Complex64::from_polar(1.0, phi / 2.0)],
            ],
        }
    }

    pub fn matrix(&self) -> [[Complex64; 2]; 2] {
        self.m
    }

    pub fn adjoint(&self) -> Self {
        let m = self.m;
        Self { m: [[m[0][0].conj(), m[1][0].conj()], [m[0][1].conj(), m[1][1].conj()]] }
    }

    /// Applies the matrix to a single-qubit column vector.
    pub fn apply_vector(&self, v: [Complex64; 2]) -> [Complex64; 2] {
        let m = self.m;
        [m[0][0] * v[0] + m[0][1] * v[1], m[1][0] * v[0] + m[1][1] * v[1]]
    }

    /// True when the two gates agree up to a global phase within `tol`.
    pub fn equivalent_up_to_phase(&self, other: &Gate, tol: f64) -> bool {
        // |Tr(A†B)| = 2 exactly when B = e^{ia} A for unitary A, B.
        let a = self.adjoint() * *other;
        ((a.m[0][0] + a.m[1][1]).norm() - 2.0).abs() <= tol
    }
}

impl Mul for Gate {
    type Output = Gate;

    fn mul(self, rhs: Gate) -> Gate {
        let (a, b) = (self.m, rhs.m);
        let mut m = [[Complex64::new(0.0, 0.0); 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                m[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        Gate { m }
    }
}

/// Max element deviation of `U†U` from the identity.
pub(crate) fn unitarity_deviation(m: &[[Complex64; 2]; 2]) -> f64 {
    let mut worst: f64 = 0.0;
    for i in 0..2 {
        for j in 0..2 {
            let entry = m[0][i].conj() * m[0][j] + m[1][i].conj() * m[1][j];
            let target = if i == j { 1.0 } else { 0.0 };
            let d = (entry - target).norm();
            if d.is_nan() {
                return f64::INFINITY;
            }
            worst = worst.max(d);
        }
    }
    worst
}
