//! The concentration protocol on a uniform chain of `2n + 1` qubits.
//!
//! Every even site is measured in the `M_phi` basis. The all-`-1` record
//! heralds success and leaves the `n + 1` odd sites in
//! `(|0...0> + e^{i n (pi + phi)} |1...1>)/sqrt(2)`, which `R_z[n (pi - phi)]`
//! on the last surviving qubit turns into the GHZ state. For `phi = pi` every
//! record can be corrected with local Cliffords.

use std::f64::consts::PI;

use nalgebra::Matrix4;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::qsim::{Gate, MeasurementBasis, Outcome, PureState, QuantumState};
use crate::wgs::{build_state, build_uniform_chain, ChainSpec, WeightedGraph};

/// `|sin(phi/2)|^{2n} / 2^n`.
pub fn success_probability(n: usize, phi: f64) -> f64 {
    let s2 = (phi / 2.0).sin().powi(2);
    (0..n).fold(1.0, |acc, _| acc * s2 / 2.0)
}

/// Kraus operators on qubits (1, 3) for measuring the middle qubit of a
/// three-qubit uniform chain. Local index `a + 2c` for qubit 1 in state `a`
/// and qubit 3 in state `c`.
#[derive(Clone, Debug, PartialEq)]
pub struct KrausPair {
    pub k_plus: Matrix4<Complex64>,
    pub k_minus: Matrix4<Complex64>,
}

impl KrausPair {
    pub fn get(&self, outcome: Outcome) -> &Matrix4<Complex64> {
        match outcome {
            Outcome::Plus => &self.k_plus,
            Outcome::Minus => &self.k_minus,
        }
    }

    /// Max element deviation of `K+†K+ + K-†K-` from the identity.
    pub fn completeness_deviation(&self) -> f64 {
        let sum = self.k_plus.adjoint() * self.k_plus + self.k_minus.adjoint() * self.k_minus;
        (sum - Matrix4::identity()).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &KrausPair) -> f64 {
        let d = |a: &Matrix4<Complex64>, b: &Matrix4<Complex64>| {
            (a - b).iter().map(|z| z.norm()).fold(0.0, f64::max)
        };
        d(&self.k_plus, &other.k_plus).max(d(&self.k_minus, &other.k_minus))
    }
}

/// Closed-form pair:
/// `K+ = cos(phi/2)(e^{-i phi/2}|00><00| + e^{i phi/2}|11><11|) + |01><01| + |10><10|`,
/// `K- = i sin(phi/2)(e^{-i phi/2}|00><00| - e^{i phi/2}|11><11|)`.
pub fn kraus_pair(phi: f64) -> KrausPair {
    let (s, c) = (phi / 2.0).sin_cos();
    let lo = Complex64::from_polar(1.0, -phi / 2.0);
    let hi = Complex64::from_polar(1.0, phi / 2.0);
    let i = Complex64::i();
    let one = Complex64::new(1.0, 0.0);
    let k_plus = Matrix4::from_diagonal(&[lo * c, one, one, hi * c].into());
    let zero = Complex64::new(0.0, 0.0);
    let k_minus = Matrix4::from_diagonal(&[i * s * lo, zero, zero, -i * s * hi].into());
    KrausPair { k_plus, k_minus }
}

/// Branch maps obtained by contracting the middle qubit of
/// `CP_{12}(phi12) CP_{23}(phi23) |a>|+>|c>` with `<m+|` and `<m-|`.
pub fn simulated_branch_maps(phi12: f64, phi23: f64, basis: &MeasurementBasis) -> Result<KrausPair> {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let plus = [Complex64::new(h, 0.0), Complex64::new(h, 0.0)];
    let ket = |bit: usize| {
        let mut v = [Complex64::new(0.0, 0.0); 2];
        v[bit] = Complex64::new(1.0, 0.0);
        v
    };
    let mut k_plus = Matrix4::zeros();
    let mut k_minus = Matrix4::zeros();
    for col in 0..4 {
        let input = PureState::product(&[ket(col & 1), plus, ket(col >> 1)])?
            .apply_controlled_phase(1, 2, phi12)?
            .apply_controlled_phase(2, 3, phi23)?;
        let p = input.project_out(2, basis.plus_vector())?;
        let m = input.project_out(2, basis.minus_vector())?;
        for row in 0..4 {
            k_plus[(row, col)] = p[row];
            k_minus[(row, col)] = m[row];
        }
    }
    Ok(KrausPair { k_plus, k_minus })
}

/// One measurement record of the protocol.
#[derive(Clone, Debug)]
pub struct ProtocolOutcome<S> {
    /// Outcome per measured site, ordered 2, 4, ..., 2n.
    pub outcomes: Vec<Outcome>,
    pub probability: f64,
    /// State of the `n + 1` surviving qubits, `None` for a null branch.
    pub post_state: Option<S>,
    pub corrected: bool,
}

impl<S: QuantumState> ProtocolOutcome<S> {
    pub fn is_success(&self) -> bool {
        self.outcomes.iter().all(|&o| o == Outcome::Minus)
    }

    /// Applies `R_z[n (pi - phi)]` to the last surviving qubit.
    pub fn apply_correction(&self, phi: f64) -> Result<Self> {
        let n = self.outcomes.len();
        let post_state = match &self.post_state {
            Some(s) => Some(s.apply_gate(s.num_qubits(), &correction_rotation(n, phi))?),
            None => None,
        };
        Ok(Self { post_state, corrected: true, ..self.clone() })
    }
}

fn check_chain_input<S: QuantumState>(state: &S, bases: &[MeasurementBasis]) -> Result<usize> {
    let nq = state.num_qubits();
    if nq.is_multiple_of(2) {
        return Err(Error::ProtocolInput(format!("chain must have an odd number of qubits, got {nq}")));
    }
    let n = nq / 2;
    if bases.len() != n {
        return Err(Error::ProtocolInput(format!(
            "{nq}-qubit chain needs {n} measurement bases, got {}",
            bases.len()
        )));
    }
    Ok(n)
}

/// Measures sites `2, 4, ..., 2n` of a `(2n+1)`-qubit chain and discards
/// them, returning all `2^n` records. Record `k` has site `2(j+1)` at
/// outcome `-1` exactly when bit `j` of `k` is set.
pub fn run_concentration<S: QuantumState>(
    state: &S,
    bases: &[MeasurementBasis],
) -> Result<Vec<ProtocolOutcome<S>>> {
    let n = check_chain_input(state, bases)?;
    let mut out = Vec::with_capacity(1 << n);
    for record in 0..1usize << n {
        let outcomes: Vec<Outcome> = (0..n)
            .map(|j| if record >> j & 1 == 1 { Outcome::Minus } else { Outcome::Plus })
            .collect();
        let (probability, post_state) = measure_record(state, bases, &outcomes)?;
        out.push(ProtocolOutcome { outcomes, probability, post_state, corrected: false });
    }
    Ok(out)
}

/// Probability and post-state of one record. Sites are measured from the
/// highest down so lower qubit labels stay fixed while discarding.
fn measure_record<S: QuantumState>(
    state: &S,
    bases: &[MeasurementBasis],
    outcomes: &[Outcome],
) -> Result<(f64, Option<S>)> {
    let mut current = state.clone();
    let mut probability = 1.0;
    for j in (0..outcomes.len()).rev() {
        let site = 2 * (j + 1);
        let branches = current.measure_qubit(site, &bases[j])?;
        let branch = branches
            .into_iter()
            .find(|b| b.outcome == outcomes[j])
            .expect("both outcomes are always returned");
        probability *= branch.probability;
        match branch.state {
            Some(s) => current = s.discard_qubit(site)?,
            None => return Ok((probability, None)),
        }
    }
    Ok((probability, Some(current)))
}

/// Only the all-`-1` record, without enumerating the others.
pub fn success_branch<S: QuantumState>(
    state: &S,
    bases: &[MeasurementBasis],
) -> Result<ProtocolOutcome<S>> {
    let n = check_chain_input(state, bases)?;
    let outcomes = vec![Outcome::Minus; n];
    let (probability, post_state) = measure_record(state, bases, &outcomes)?;
    Ok(ProtocolOutcome { outcomes, probability, post_state, corrected: false })
}

/// `R_z[n (pi - phi)]`.
pub fn correction_rotation(n: usize, phi: f64) -> Gate {
    Gate::rz(n as f64 * (PI - phi))
}

/// Builds the uniform chain, runs the protocol with `M_phi` on every even
/// site and returns the corrected success record.
pub fn concentrate(spec: &ChainSpec) -> Result<ProtocolOutcome<PureState>> {
    let state = build_uniform_chain(spec)?;
    let bases = vec![MeasurementBasis::m_phi(spec.phi); spec.n];
    success_branch(&state, &bases)?.apply_correction(spec.phi)
}

/// Single-qubit Cliffords modulo global phase, generated from `H` and `S`.
pub fn single_qubit_cliffords() -> Vec<(String, Gate)> {
    let mut found: Vec<(String, Gate)> = vec![("I".into(), Gate::identity())];
    let generators = [("H", Gate::hadamard()), ("S", Gate::s())];
    let mut frontier = 0;
    while frontier < found.len() {
        let (word, g) = found[frontier].clone();
        for (name, gen) in &generators {
            let next = *gen * g;
            if !found.iter().any(|(_, h)| h.equivalent_up_to_phase(&next, 1e-12)) {
                let word = if word == "I" { (*name).to_string() } else { format!("{name}{word}") };
                found.push((word, next));
            }
        }
        frontier += 1;
    }
    found
}

/// A `phi = pi` record together with the local gates that take it to GHZ.
#[derive(Clone, Debug)]
pub struct ClusterConversion {
    pub outcome: ProtocolOutcome<PureState>,
    /// Gate name per surviving qubit, qubit 1 first.
    pub corrections: Vec<String>,
    pub fidelity: f64,
}

/// Fidelity threshold at which a correction search stops.
const CONVERSION_FIDELITY: f64 = 1.0 - 1e-10;

/// For a cluster chain (`phi = pi`) measured in the X basis, finds per-qubit
/// Clifford corrections bringing every record to the GHZ state. Paulis are
/// tried first, then the full single-qubit Clifford group.
pub fn deterministic_cluster_conversion(spec: &ChainSpec) -> Result<Vec<ClusterConversion>> {
    if (spec.phi - PI).abs() > 1e-12 {
        return Err(Error::ProtocolInput(format!(
            "deterministic conversion needs phi = pi, got {}",
            spec.phi
        )));
    }
    let state = build_state(&WeightedGraph::path(&vec![PI; 2 * spec.n])?)?;
    let bases = vec![MeasurementBasis::m_phi(PI); spec.n];
    let target = PureState::ghz(spec.n + 1, 0.0)?;
    let paulis: Vec<(String, Gate)> = [
        ("I", Gate::identity()),
        ("X", Gate::pauli_x()),
        ("Z", Gate::pauli_z()),
        ("Y", Gate::pauli_y()),
    ]
    .into_iter()
    .map(|(n, g)| (n.to_string(), g))
    .collect();
    let cliffords = single_qubit_cliffords();

    run_concentration(&state, &bases)?
        .into_iter()
        .map(|outcome| {
            let post = outcome
                .post_state
                .as_ref()
                .ok_or_else(|| Error::ProtocolInput("cluster record with zero probability".into()))?;
            let found = search_corrections(post, &target, &paulis)?
                .or(search_corrections(post, &target, &cliffords)?);
            let (corrections, corrected) = found.ok_or_else(|| {
                Error::ProtocolInput(format!("no local Clifford correction for record {:?}", outcome.outcomes))
            })?;
            let fidelity = corrected.fidelity(&target)?;
            Ok(ClusterConversion {
                outcome: ProtocolOutcome { post_state: Some(corrected), corrected: true, ..outcome },
                corrections,
                fidelity,
            })
        })
        .collect()
}

fn search_corrections(
    state: &PureState,
    target: &PureState,
    gates: &[(String, Gate)],
) -> Result<Option<(Vec<String>, PureState)>> {
    let nq = state.num_qubits();
    let total = gates.len().pow(nq as u32);
    for combo in 0..total {
        let mut s = state.clone();
        let mut names = Vec::with_capacity(nq);
        let mut rest = combo;
        for q in 1..=nq {
            let (name, g) = &gates[rest % gates.len()];
            rest /= gates.len();
            s = s.apply_gate(q, g)?;
            names.push(name.clone());
        }
        if s.fidelity(target)? >= CONVERSION_FIDELITY {
            return Ok(Some((names, s)));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn success_probability_cases() {
        assert_eq!(success_probability(0, 0.3), 1.0);
        for n in 0..6 {
            assert!((success_probability(n, PI) - 0.5f64.powi(n as i32)).abs() < 1e-15);
        }
        assert!((success_probability(2, PI / 2.0) - 1.0 / 16.0).abs() < 1e-15);
    }

    #[test]
    fn kraus_endpoints() {
        let k = kraus_pair(PI);
        assert!((k.k_minus[(0, 0)].norm() - 1.0).abs() < 1e-15);
        assert!((k.k_minus[(3, 3)].norm() - 1.0).abs() < 1e-15);
        let k0 = kraus_pair(0.0);
        assert!(k0.k_minus.iter().all(|z| z.norm() == 0.0));
    }

    #[test]
    fn kraus_complete() {
        for phi in [-2.0, -0.1, 0.0, 0.4, 1.7, PI] {
            assert!(kraus_pair(phi).completeness_deviation() < 1e-15);
        }
    }

    #[test]
    fn clifford_group_has_24_elements() {
        assert_eq!(single_qubit_cliffords().len(), 24);
    }

    #[test]
    fn input_checks() {
        let even = PureState::plus(4).unwrap();
        assert!(run_concentration(&even, &[MeasurementBasis::x(); 2]).is_err());
        let odd = PureState::plus(5).unwrap();
        assert!(run_concentration(&odd, &[MeasurementBasis::x(); 1]).is_err());
        assert!(deterministic_cluster_conversion(&ChainSpec::new(1, 0.9 * PI)).is_err());
    }

    #[test]
    fn correction_is_identity_for_n0() {
        assert!(correction_rotation(0, 0.7).equivalent_up_to_phase(&Gate::identity(), 1e-15));
    }
}
