use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::{bit_of, DensityMatrix, Gate, QuantumState};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NoiseKind {
    /// `(1-p) rho + p/3 (X rho X + Y rho Y + Z rho Z)`
    Depolarizing,
    /// `(1-p) rho + p Z rho Z`
    Dephasing,
}

impl fmt::Display for NoiseKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NoiseKind::Depolarizing => "depolarizing",
            NoiseKind::Dephasing => "dephasing",
        })
    }
}

impl FromStr for NoiseKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "depolarizing" | "depolarising" => Ok(NoiseKind::Depolarizing),
            "dephasing" => Ok(NoiseKind::Dephasing),
            other => Err(Error::Config(format!("unknown noise kind `{other}`"))),
        }
    }
}

/// Single-qubit Pauli noise with error probability in `[0, 1]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NoiseSpec {
    kind: NoiseKind,
    probability: f64,
}

impl NoiseSpec {
    pub fn new(kind: NoiseKind, probability: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&probability) {
            return Err(Error::InvalidProbability(probability));
        }
        Ok(Self { kind, probability })
    }

    pub fn depolarizing(p: f64) -> Result<Self> {
        Self::new(NoiseKind::Depolarizing, p)
    }

    pub fn dephasing(p: f64) -> Result<Self> {
        Self::new(NoiseKind::Dephasing, p)
    }

    pub fn kind(&self) -> NoiseKind {
        self.kind
    }

    pub fn probability(&self) -> f64 {
        self.probability
    }

    /// Weighted Pauli branches `(w_k, P_k)` with `sum w_k = 1`.
    pub fn pauli_branches(&self) -> Vec<(f64, Gate)> {
        let p = self.probability;
        match self.kind {
            NoiseKind::Depolarizing => vec![
                (1.0 - p, Gate::identity()),
                (p / 3.0, Gate::pauli_x()),
                (p / 3.0, Gate::pauli_y()),
                (p / 3.0, Gate::pauli_z()),
            ],
            NoiseKind::Dephasing => vec![(1.0 - p, Gate::identity()), (p, Gate::pauli_z())],
        }
    }
}

/// Applies the noise channel to one qubit of `rho`.
pub fn apply_channel(rho: &DensityMatrix, qubit: usize, noise: &NoiseSpec) -> Result<DensityMatrix> {
    let bit = bit_of(qubit, rho.num_qubits())?;
    let dim = rho.dim();
    let mut acc = DMatrix::<Complex64>::zeros(dim, dim);
    for (weight, pauli) in noise.pauli_branches() {
        if weight == 0.0 {
            continue;
        }
        acc += rho.conjugate_local(bit, &pauli.matrix()) * Complex64::new(weight, 0.0);
    }
    Ok(DensityMatrix::from_raw(rho.num_qubits(), acc))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qsim::PureState;

    fn single(r: [[f64; 2]; 2]) -> DensityMatrix {
        let m = DMatrix::from_fn(2, 2, |i, j| Complex64::new(r[i][j], 0.0));
        DensityMatrix::new(1, m).unwrap()
    }

    #[test]
    fn zero_probability_is_identity() {
        let rho = PureState::plus(2).unwrap().to_density();
        for noise in [NoiseSpec::depolarizing(0.0).unwrap(), NoiseSpec::dephasing(0.0).unwrap()] {
            let out = apply_channel(&rho, 1, &noise).unwrap();
            assert!(out.max_abs_diff(&rho) < 1e-16);
        }
    }

    #[test]
    fn three_quarters_depolarizing_is_fully_mixing() {
        let rho = PureState::normalized(1, vec![Complex64::new(0.6, 0.2), Complex64::new(0.1, -0.7)])
            .unwrap()
            .to_density();
        let out = apply_channel(&rho, 1, &NoiseSpec::depolarizing(0.75).unwrap()).unwrap();
        assert!(out.max_abs_diff(&DensityMatrix::maximally_mixed(1).unwrap()) < 1e-15);
    }

    #[test]
    fn depolarizing_zero_state() {
        let p = 0.13;
        let out = apply_channel(&single([[1., 0.], [0., 0.]]), 1, &NoiseSpec::depolarizing(p).unwrap())
            .unwrap();
        let expected = single([[1.0 - 2.0 * p / 3.0, 0.], [0., 2.0 * p / 3.0]]);
        assert!(out.max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn dephasing_damps_coherence() {
        let p = 0.2;
        let out = apply_channel(&single([[0.5, 0.5], [0.5, 0.5]]), 1, &NoiseSpec::dephasing(p).unwrap())
            .unwrap();
        let expected = single([[0.5, 0.5 * (1.0 - 2.0 * p)], [0.5 * (1.0 - 2.0 * p), 0.5]]);
        assert!(out.max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn probability_range_checked() {
        assert!(matches!(NoiseSpec::depolarizing(1.2), Err(Error::InvalidProbability(_))));
        assert!(NoiseSpec::dephasing(-0.01).is_err());
        assert!(NoiseSpec::dephasing(f64::NAN).is_err());
        assert!(NoiseSpec::dephasing(1.0).is_ok());
    }

    #[test]
    fn kind_parses() {
        assert_eq!("Depolarizing".parse::<NoiseKind>().unwrap(), NoiseKind::Depolarizing);
        assert_eq!("dephasing".parse::<NoiseKind>().unwrap(), NoiseKind::Dephasing);
        assert!("amplitude".parse::<NoiseKind>().is_err());
    }
}
