use std::f64::consts::{FRAC_PI_2, PI, TAU};
use std::fmt;

use num_complex::Complex64;

/// Label of a single-qubit measurement outcome.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Outcome {
    Plus,
    Minus,
}

impl Outcome {
    pub fn value(self) -> i8 {
        match self {
            Outcome::Plus => 1,
            Outcome::Minus => -1,
        }
    }

    pub fn from_value(v: i8) -> Option<Self> {
        match v {
            1 => Some(Outcome::Plus),
            -1 => Some(Outcome::Minus),
            _ => None,
        }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Plus => "+1",
            Outcome::Minus => "-1",
        })
    }
}

/// Rank-1 projective single-qubit basis
/// `|m+> = cos(theta/2)|0> + e^{i lambda} sin(theta/2)|1>`,
/// `|m-> = sin(theta/2)|0> - e^{i lambda} cos(theta/2)|1>`.
///
/// Angles are stored canonically with `theta` in `[0, pi]` and `lambda` in
/// `[0, 2 pi)`. Any real pair is accepted and folded onto the canonical
/// parameters describing the same two projectors with the same labels.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MeasurementBasis {
    theta: f64,
    lambda: f64,
}

impl MeasurementBasis {
    pub fn new(theta: f64, lambda: f64) -> Self {
        let mut theta = theta.rem_euclid(TAU);
        let mut lambda = lambda;
        if theta > PI {
            theta = TAU - theta;
            lambda += PI;
        }
        let mut lambda = lambda.rem_euclid(TAU);
        if lambda >= TAU {
            lambda = 0.0;
        }
        Self { theta, lambda }
    }

    /// Eigenbasis of `R_z(phi) X R_z(phi)^†`: `|m±> ∝ |0> ± e^{i phi}|1>`.
    pub fn m_phi(phi: f64) -> Self {
        Self::new(FRAC_PI_2, phi)
    }

    /// Pauli-X eigenbasis, `|+>` carrying outcome `+1`.
    pub fn x() -> Self {
        Self::new(FRAC_PI_2, 0.0)
    }

    /// Computational basis, `|0>` carrying outcome `+1`.
    pub fn z() -> Self {
        Self::new(0.0, 0.0)
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn plus_vector(&self) -> [Complex64; 2] {
        let (s, c) = (self.theta / 2.0).sin_cos();
        [Complex64::new(c, 0.0), Complex64::from_polar(s, self.lambda)]
    }

    pub fn minus_vector(&self) -> [Complex64; 2] {
        let (s, c) = (self.theta / 2.0).sin_cos();
        [Complex64::new(s, 0.0), -Complex64::from_polar(c, self.lambda)]
    }

    pub fn vector(&self, outcome: Outcome) -> [Complex64; 2] {
        match outcome {
            Outcome::Plus => self.plus_vector(),
            Outcome::Minus => self.minus_vector(),
        }
    }

    /// Projector `|m><m|` for the given outcome, `p[row][col]`.
    pub fn projector(&self, outcome: Outcome) -> [[Complex64; 2]; 2] {
        let v = self.vector(outcome);
        [[v[0] * v[0].conj(), v[0] * v[1].conj()], [v[1] * v[0].conj(), v[1] * v[1].conj()]]
    }
}
