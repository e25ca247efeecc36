//! Middle-qubit basis optimization for three-qubit chains.
//!
//! The objective is the larger of the two branch concurrences of the outer
//! pair after measuring qubit 2 in basis `(theta, lambda)`. The search covers
//! the full projective family: a 25 x 50 grid over `theta in [0, pi]`,
//! `lambda in [0, 2 pi)`, then Nelder-Mead from the four best grid points.

mod simplex;

pub use simplex::{Minimum, NelderMead};

use std::f64::consts::{PI, TAU};

use crate::error::{Error, Result};
use crate::metrics::concurrence;
use crate::qsim::{MeasurementBasis, Outcome, QuantumState};

pub const THETA_GRID: usize = 25;
pub const LAMBDA_GRID: usize = 50;
pub const STARTS: usize = 4;
pub const PARAMETER_TOLERANCE: f64 = 1e-7;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BranchScore {
    pub outcome: Outcome,
    pub probability: f64,
    /// Zero for a null branch.
    pub concurrence: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OptimizationResult {
    pub best_basis: MeasurementBasis,
    pub best_concurrence: f64,
    pub best_branch: Outcome,
    /// Probability of `best_branch` at `best_basis`.
    pub success_probability: f64,
    /// Probability of outcome `-1` at `best_basis`.
    pub minus_probability: f64,
    pub evaluations: usize,
}

fn check_three_qubits<S: QuantumState>(state: &S) -> Result<()> {
    if state.num_qubits() != 3 {
        return Err(Error::DimensionMismatch { expected: 3, found: state.num_qubits() });
    }
    Ok(())
}

/// Both branches of measuring qubit 2, scored by outer-pair concurrence.
pub fn evaluate_basis<S: QuantumState>(state: &S, basis: &MeasurementBasis) -> Result<[BranchScore; 2]> {
    check_three_qubits(state)?;
    let branches = state.measure_qubit(2, basis)?;
    let mut scores = [Outcome::Plus, Outcome::Minus].map(|outcome| BranchScore {
        outcome,
        probability: 0.0,
        concurrence: 0.0,
    });
    for (score, branch) in scores.iter_mut().zip(branches) {
        score.probability = branch.probability;
        if let Some(s) = branch.state {
            score.concurrence = concurrence(&s.discard_qubit(2)?.to_density())?.value;
        }
    }
    Ok(scores)
}

/// The branch with the larger concurrence; ties go to `-1`.
pub fn best_branch(scores: &[BranchScore; 2]) -> BranchScore {
    if scores[1].concurrence >= scores[0].concurrence {
        scores[1]
    } else {
        scores[0]
    }
}

/// `M_phi'` with `phi' = (phi12 + phi23) / 2`.
pub fn analytic_basis_guess(phi12: f64, phi23: f64) -> MeasurementBasis {
    MeasurementBasis::m_phi((phi12 + phi23) / 2.0)
}

/// The basis whose `|m->` is this basis' `|m+>` and vice versa.
pub fn swap_labels(basis: &MeasurementBasis) -> MeasurementBasis {
    MeasurementBasis::new(PI - basis.theta(), basis.lambda() + PI)
}

pub fn optimize_basis<S: QuantumState>(state: &S) -> Result<OptimizationResult> {
    check_three_qubits(state)?;
    let mut evaluations = 0usize;
    let mut objective = |x: [f64; 2]| -> Result<f64> {
        evaluations += 1;
        Ok(best_branch(&evaluate_basis(state, &MeasurementBasis::new(x[0], x[1]))?).concurrence)
    };

    let theta_step = PI / (THETA_GRID - 1) as f64;
    let lambda_step = TAU / LAMBDA_GRID as f64;
    let mut grid = Vec::with_capacity(THETA_GRID * LAMBDA_GRID);
    for i in 0..THETA_GRID {
        for j in 0..LAMBDA_GRID {
            let x = [i as f64 * theta_step, j as f64 * lambda_step];
            grid.push((x, objective(x)?));
        }
    }
    // descending value, grid order on ties
    grid.sort_by(|a, b| b.1.total_cmp(&a.1));

    let nm = NelderMead { xatol: PARAMETER_TOLERANCE, ..NelderMead::default() };
    let mut best: Option<([f64; 2], f64)> = None;
    for &(x0, _) in grid.iter().take(STARTS) {
        let first = nm.minimize(|x| objective(x).map(|v| -v), x0, [theta_step, lambda_step])?;
        // restart from the converged point to guard against simplex collapse
        let step = [theta_step * 0.05, lambda_step * 0.05];
        let polished = nm.minimize(|x| objective(x).map(|v| -v), first.x, step)?;
        let candidate = if polished.value <= first.value { polished } else { first };
        if best.is_none_or(|(_, v)| -candidate.value > v) {
            best = Some((candidate.x, -candidate.value));
        }
    }
    let (x, _) = best.expect("at least one start");
    let mut best_basis = MeasurementBasis::new(x[0], x[1]);
    let mut scores = evaluate_basis(state, &best_basis)?;
    if best_branch(&scores).outcome == Outcome::Plus {
        // same projectors with the labels exchanged, so the kept branch reads -1
        best_basis = swap_labels(&best_basis);
        scores = evaluate_basis(state, &best_basis)?;
    }
    let chosen = best_branch(&scores);
    Ok(OptimizationResult {
        best_basis,
        best_concurrence: chosen.concurrence,
        best_branch: chosen.outcome,
        success_probability: chosen.probability,
        minus_probability: scores[1].probability,
        evaluations: evaluations + 1,
    })
}
