//! Closed-form self-checks run by `wgs-ghz verify`.

use std::f64::consts::PI;

use crate::error::Result;
use crate::metrics::{concurrence, reference_concurrence};
use crate::optimize::optimize_basis;
use crate::protocol::{
    concentrate, deterministic_cluster_conversion, kraus_pair, simulated_branch_maps, success_branch,
    success_probability,
};
use crate::qsim::{apply_channel, DensityMatrix, MeasurementBasis, NoiseSpec, PureState, QuantumState};
use crate::wgs::{build_state, build_uniform_chain, ChainSpec, WeightedGraph};

#[derive(Clone, Debug)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &'static str, result: Result<(bool, String)>) -> Check {
    match result {
        Ok((passed, detail)) => Check { name, passed, detail },
        Err(e) => Check { name, passed: false, detail: format!("error: {e}") },
    }
}

fn phi_grid() -> impl Iterator<Item = f64> {
    (1..=10).map(|k| k as f64 * 0.1 * PI)
}

pub fn run_checks() -> Vec<Check> {
    vec![
        check("success probability matches closed form", success_probability_check()),
        check("corrected success state is GHZ", ghz_check()),
        check("Kraus operators match simulation", kraus_check()),
        check("fig2 values", fig2_check()),
        check("cluster chain converts deterministically", cluster_check()),
        check("Werner-state concurrence", werner_check()),
        check("noiseless reference concurrence", reference_check()),
        check("channels preserve trace and positivity", channel_check()),
        check("uniform chain optimum reaches C = 1", optimizer_check()),
    ]
}

fn success_probability_check() -> Result<(bool, String)> {
    let mut worst: f64 = 0.0;
    for n in 1..=4 {
        for phi in phi_grid() {
            let state = build_uniform_chain(&ChainSpec::new(n, phi))?;
            let p = success_branch(&state, &vec![MeasurementBasis::m_phi(phi); n])?.probability;
            worst = worst.max((p - success_probability(n, phi)).abs());
        }
    }
    Ok((worst <= 1e-10, format!("max deviation {worst:.3e}")))
}

fn ghz_check() -> Result<(bool, String)> {
    let mut worst: f64 = 0.0;
    for n in 1..=4 {
        let target = PureState::ghz(n + 1, 0.0)?;
        for phi in phi_grid() {
            let rec = concentrate(&ChainSpec::new(n, phi))?;
            let f = rec.post_state.as_ref().map_or(Ok(0.0), |s| s.fidelity(&target))?;
            worst = worst.max(1.0 - f);
        }
    }
    Ok((worst <= 1e-10, format!("max infidelity {worst:.3e}")))
}

fn kraus_check() -> Result<(bool, String)> {
    let mut worst: f64 = 0.0;
    let mut completeness: f64 = 0.0;
    for phi in phi_grid().chain([-0.3 * PI, 0.05]) {
        let sim = simulated_branch_maps(phi, phi, &MeasurementBasis::m_phi(phi))?;
        let closed = kraus_pair(phi);
        worst = worst.max(sim.max_abs_diff(&closed));
        completeness = completeness.max(closed.completeness_deviation());
    }
    Ok((worst <= 1e-12 && completeness <= 1e-13, format!("element deviation {worst:.3e}, completeness {completeness:.3e}")))
}

fn fig2_check() -> Result<(bool, String)> {
    let at = |phi: f64| -> Result<f64> {
        let state = build_uniform_chain(&ChainSpec::new(2, phi))?;
        Ok(success_branch(&state, &[MeasurementBasis::m_phi(phi); 2])?.probability)
    };
    let half = at(PI / 2.0)?;
    let mut above = true;
    for k in 51..=100 {
        above &= at(k as f64 * PI / 100.0)? > 1.0 / 32.0;
    }
    Ok(((half - 1.0 / 16.0).abs() <= 1e-12 && above, format!("P_s(pi/2) = {half}")))
}

fn cluster_check() -> Result<(bool, String)> {
    let mut ok = true;
    let mut worst: f64 = 0.0;
    for n in 1..=3 {
        let conv = deterministic_cluster_conversion(&ChainSpec::new(n, PI))?;
        let total: f64 = conv.iter().map(|c| c.outcome.probability).sum();
        ok &= conv.len() == 1 << n && (total - 1.0).abs() <= 1e-12;
        for c in &conv {
            worst = worst.max(1.0 - c.fidelity);
        }
    }
    Ok((ok && worst <= 1e-10, format!("max infidelity {worst:.3e}")))
}

fn werner(w: f64) -> Result<DensityMatrix> {
    let bell = PureState::ghz(2, 0.0)?.to_density();
    let mixed = DensityMatrix::maximally_mixed(2)?;
    let m = bell.elements() * num_complex::Complex64::new(w, 0.0)
        + mixed.elements() * num_complex::Complex64::new(1.0 - w, 0.0);
    DensityMatrix::new(2, m)
}

fn werner_check() -> Result<(bool, String)> {
    let mut worst: f64 = 0.0;
    for w in [0.0, 1.0 / 3.0, 0.6, 1.0] {
        let c = concurrence(&werner(w)?)?.value;
        worst = worst.max((c - ((3.0 * w - 1.0) / 2.0).max(0.0)).abs());
    }
    Ok((worst <= 1e-10, format!("max deviation {worst:.3e}")))
}

fn reference_check() -> Result<(bool, String)> {
    let none = NoiseSpec::depolarizing(0.0)?;
    let mut worst: f64 = 0.0;
    for k in 0..=100 {
        let phi = -PI + 2.0 * PI * k as f64 / 100.0;
        worst = worst.max((reference_concurrence(phi, &none)? - (phi / 2.0).sin().abs()).abs());
    }
    Ok((worst <= 1e-12, format!("max deviation {worst:.3e}")))
}

fn channel_check() -> Result<(bool, String)> {
    let mut worst_trace: f64 = 0.0;
    let mut min_eig = f64::INFINITY;
    let graph = WeightedGraph::path(&[0.7 * PI, -0.4 * PI])?;
    let mut rho = build_state(&graph)?.to_density();
    for step in 0..60 {
        let p = (step % 7) as f64 / 7.0;
        let noise = if step % 2 == 0 { NoiseSpec::depolarizing(p)? } else { NoiseSpec::dephasing(p)? };
        rho = apply_channel(&rho, step % 3 + 1, &noise)?;
        worst_trace = worst_trace.max((rho.trace().re - 1.0).abs());
        min_eig = min_eig.min(rho.min_eigenvalue());
    }
    Ok((worst_trace <= 1e-14 && min_eig >= -1e-10, format!("trace error {worst_trace:.3e}, min eigenvalue {min_eig:.3e}")))
}

fn optimizer_check() -> Result<(bool, String)> {
    let phi = 0.7 * PI;
    let r = optimize_basis(&build_state(&WeightedGraph::path(&[phi, phi])?)?)?;
    Ok(((r.best_concurrence - 1.0).abs() <= 1e-6, format!("C = {:.12}", r.best_concurrence)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_checks_pass() {
        for c in run_checks() {
            assert!(c.passed, "{}: {}", c.name, c.detail);
        }
    }
}
