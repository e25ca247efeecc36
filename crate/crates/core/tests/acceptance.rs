//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero when any criterion fails.

mod common;

use std::f64::consts::PI;
use std::process::ExitCode;

use rand::Rng;
use wgs_ghz::harness::sweep::noisy_success;
use wgs_ghz::harness::{run_preset_with_workers, write_csv, Preset, SweepConfig};
use wgs_ghz::metrics::{concurrence, reference_concurrence};
use wgs_ghz::optimize::{analytic_basis_guess, best_branch, evaluate_basis, optimize_basis};
use wgs_ghz::protocol::{
    concentrate, deterministic_cluster_conversion, kraus_pair, simulated_branch_maps, success_branch,
    success_probability,
};
use wgs_ghz::qsim::{apply_channel, Complex64, DensityMatrix, MeasurementBasis, NoiseSpec, PureState, QuantumState};
use wgs_ghz::wgs::{build_noisy_state, build_state, build_uniform_chain, ChainSpec, WeightedGraph};
use wgs_ghz::Result;

type Criterion = fn() -> Result<Verdict>;

struct Verdict {
    passed: bool,
    detail: String,
}

fn verdict(passed: bool, detail: impl Into<String>) -> Result<Verdict> {
    Ok(Verdict { passed, detail: detail.into() })
}

fn phi_grid() -> impl Iterator<Item = f64> {
    (1..=10).map(|k| k as f64 * 0.1 * PI)
}

fn success_probability_oracle() -> Result<Verdict> {
    let mut worst: f64 = 0.0;
    for n in 1..=4 {
        for phi in phi_grid() {
            let state = build_uniform_chain(&ChainSpec::new(n, phi))?;
            let p = success_branch(&state, &vec![MeasurementBasis::m_phi(phi); n])?.probability;
            worst = worst.max((p - success_probability(n, phi)).abs());
        }
    }
    verdict(worst <= 1e-10, format!("max |P_sim - P_closed| = {worst:.2e}"))
}

/// Fidelity with the closest state `(|0..0> + e^{ia}|1..1>)/sqrt 2`.
fn ghz_orbit_fidelity(psi: &PureState) -> f64 {
    let a = psi.amplitudes();
    (a[0].norm() + a[a.len() - 1].norm()).powi(2) / 2.0
}

fn ghz_extraction() -> Result<Verdict> {
    let mut worst_orbit: f64 = 0.0;
    let mut worst_exact: f64 = 0.0;
    for n in 1..=4 {
        let ghz = PureState::ghz(n + 1, 0.0)?;
        for phi in phi_grid() {
            let record = concentrate(&ChainSpec::new(n, phi))?;
            let Some(state) = record.post_state else {
                return verdict(false, format!("null success branch at n={n}, phi={phi}"));
            };
            worst_orbit = worst_orbit.max(1.0 - ghz_orbit_fidelity(&state));
            worst_exact = worst_exact.max(1.0 - state.fidelity(&ghz)?);
        }
    }
    verdict(
        worst_orbit <= 1e-10 && worst_exact <= 1e-10,
        format!("max orbit infidelity {worst_orbit:.2e}, max exact-GHZ infidelity {worst_exact:.2e}"),
    )
}

fn kraus_closed_form() -> Result<Verdict> {
    let mut rng = common::rng(3);
    let mut element: f64 = 0.0;
    let mut completeness: f64 = 0.0;
    for _ in 0..100 {
        let phi = rng.random_range(-PI..PI);
        let simulated = simulated_branch_maps(phi, phi, &MeasurementBasis::m_phi(phi))?;
        let closed = kraus_pair(phi);
        element = element.max(simulated.max_abs_diff(&closed));
        completeness = completeness.max(closed.completeness_deviation());
    }
    verdict(
        element <= 1e-12 && completeness <= 1e-13,
        format!("max element deviation {element:.2e}, completeness {completeness:.2e}"),
    )
}

fn fig2() -> Result<Verdict> {
    let table = run_preset_with_workers(&SweepConfig::preset(Preset::Fig2), 1)?;
    let phis = table.column("phi").expect("fig2 has phi");
    let ps = table.column("ps").expect("fig2 has ps");
    let half = success_branch(
        &build_uniform_chain(&ChainSpec::new(2, PI / 2.0))?,
        &[MeasurementBasis::m_phi(PI / 2.0); 2],
    )?
    .probability;
    let below: Vec<f64> = phis
        .iter()
        .zip(&ps)
        .filter(|(&phi, &p)| phi > PI / 2.0 + 1e-12 && p <= 1.0 / 32.0)
        .map(|(&phi, _)| phi / PI)
        .collect();
    verdict(
        (half - 1.0 / 16.0).abs() <= 1e-12 && below.is_empty(),
        format!("P_s(pi/2) = {half:.15}, grid points above pi/2 not beating 1/32: {below:?}"),
    )
}

fn coherent_error_optimum() -> Result<Verdict> {
    let grid: Vec<f64> = (1..=21).map(|k| k as f64 * PI / 21.0).collect();
    let mut worst_gap = f64::INFINITY;
    let mut worst_diagonal: f64 = 0.0;
    for &phi12 in &grid {
        for &phi23 in &grid {
            let state = build_state(&WeightedGraph::path(&[phi12, phi23])?)?;
            let optimum = optimize_basis(&state)?.best_concurrence;
            let analytic = best_branch(&evaluate_basis(&state, &analytic_basis_guess(phi12, phi23))?).concurrence;
            worst_gap = worst_gap.min(optimum - analytic);
            if (phi12 - phi23).abs() < 1e-12 {
                worst_diagonal = worst_diagonal.max(1.0 - optimum);
            }
        }
    }
    // phi12 = -phi23 lies outside (0, pi]^2; checked on the mirrored diagonal.
    for &phi in &grid {
        let state = build_state(&WeightedGraph::path(&[phi, -phi])?)?;
        worst_diagonal = worst_diagonal.max(1.0 - optimize_basis(&state)?.best_concurrence);
    }
    verdict(
        worst_gap >= -1e-8 && worst_diagonal <= 1e-6,
        format!("min(C_opt - C_analytic) = {worst_gap:.2e}, max 1 - C on phi12 = +-phi23: {worst_diagonal:.2e}"),
    )
}

fn fig3c_region() -> Result<Verdict> {
    let mut config = SweepConfig::preset(Preset::Fig3c);
    config.axes[0].start = 0.5 * PI;
    config.axes[0].stop = PI;
    config.axes[0].count = 201;
    let table = run_preset_with_workers(&config, 1)?;
    let phis = table.column("phi23").expect("fig3c has phi23");
    let delta = table.column("delta_c").expect("fig3c has delta_c");
    let centre = phis
        .iter()
        .position(|&p| (p - 0.8 * PI).abs() < 1e-9)
        .expect("grid contains 0.8 pi");
    let mut lo = centre;
    while lo > 0 && delta[lo - 1] > 0.0 {
        lo -= 1;
    }
    let mut hi = centre;
    while hi + 1 < delta.len() && delta[hi + 1] > 0.0 {
        hi += 1;
    }
    let neighbourhood = lo < centre && hi > centre;
    verdict(
        delta[centre] > 0.0 && neighbourhood,
        format!(
            "dC(0.8pi) = {:.4}, positive on phi23/pi in [{:.4}, {:.4}] (width {:.4} pi)",
            delta[centre],
            phis[lo] / PI,
            phis[hi] / PI,
            (phis[hi] - phis[lo]) / PI
        ),
    )
}

fn depolarizing_robustness() -> Result<Verdict> {
    let phi = 0.8 * PI;
    let low = NoiseSpec::depolarizing(0.02)?;
    let (c_low, _) = noisy_success(phi, phi, &low)?;
    let high = NoiseSpec::depolarizing(0.05)?;
    let (c_high, _) = noisy_success(phi, phi, &high)?;
    let c_ref = reference_concurrence(phi, &high)?;
    let delta = c_high - c_ref;
    verdict(
        c_low > 0.9 && delta > 0.0,
        format!("C(p=0.02) = {c_low:.4}; at p=0.05 C = {c_high:.4}, C_ref = {c_ref:.4}, dC = {delta:.4}"),
    )
}

fn basis_stability() -> Result<Verdict> {
    let mut worst: f64 = 0.0;
    for (phi12, phi23) in [(0.8 * PI, 0.8 * PI), (0.6 * PI, 0.9 * PI), (0.5 * PI, 0.5 * PI)] {
        let graph = WeightedGraph::path(&[phi12, phi23])?;
        let noiseless_basis = optimize_basis(&build_state(&graph)?)?.best_basis;
        for k in 1..=5 {
            let p = 0.01 * k as f64;
            for noise in [NoiseSpec::depolarizing(p)?, NoiseSpec::dephasing(p)?] {
                let rho = build_noisy_state(&graph, &noise)?;
                let optimized = optimize_basis(&rho)?.best_concurrence;
                let fixed = best_branch(&evaluate_basis(&rho, &noiseless_basis)?).concurrence;
                worst = worst.max((optimized - fixed).abs());
            }
        }
    }
    verdict(worst <= 1e-4, format!("max |C_opt(noisy) - C(noiseless basis)| = {worst:.2e}"))
}

fn dephasing_analogue() -> Result<Verdict> {
    let (c, _) = noisy_success(0.8 * PI, 0.8 * PI, &NoiseSpec::dephasing(0.02)?)?;
    verdict(c > 0.9, format!("C = {c:.4}"))
}

fn cluster_conversion() -> Result<Verdict> {
    let mut worst: f64 = 0.0;
    let mut worst_total: f64 = 0.0;
    let mut complete = true;
    for n in 1..=3 {
        let conversions = deterministic_cluster_conversion(&ChainSpec::new(n, PI))?;
        complete &= conversions.len() == 1 << n;
        let total: f64 = conversions.iter().map(|c| c.outcome.probability).sum();
        worst_total = worst_total.max((total - 1.0).abs());
        for c in &conversions {
            worst = worst.max(1.0 - c.fidelity);
        }
    }
    verdict(
        complete && worst <= 1e-10 && worst_total <= 1e-12,
        format!("max infidelity {worst:.2e}, |total probability - 1| = {worst_total:.2e}"),
    )
}

fn werner(w: f64) -> Result<DensityMatrix> {
    let bell = PureState::ghz(2, 0.0)?.to_density();
    let mixed = DensityMatrix::maximally_mixed(2)?;
    DensityMatrix::new(
        2,
        bell.elements() * Complex64::new(w, 0.0) + mixed.elements() * Complex64::new(1.0 - w, 0.0),
    )
}

fn property_suites() -> Result<Verdict> {
    let mut rng = common::rng(11);

    let mut trace_error: f64 = 0.0;
    let mut min_eigenvalue = f64::INFINITY;
    for i in 0..10_000 {
        let rho = common::random_density(&mut rng, 2, 1 + i % 4);
        let p = rng.random_range(0.0..=1.0);
        let noise = if i % 2 == 0 { NoiseSpec::depolarizing(p)? } else { NoiseSpec::dephasing(p)? };
        let out = apply_channel(&rho, 1 + i % 2, &noise)?;
        trace_error = trace_error.max((out.trace() - Complex64::new(1.0, 0.0)).norm());
        min_eigenvalue = min_eigenvalue.min(out.min_eigenvalue());
    }
    let channels_ok = trace_error <= 1e-12 && min_eigenvalue >= -1e-10;

    let mut lu_deviation: f64 = 0.0;
    for i in 0..200 {
        let rho = if i % 2 == 0 {
            common::random_pure(&mut rng, 2).to_density()
        } else {
            common::random_density(&mut rng, 2, 2 + i % 3)
        };
        let before = concurrence(&rho)?.value;
        let rotated = rho
            .apply_gate(1, &common::random_unitary(&mut rng))?
            .apply_gate(2, &common::random_unitary(&mut rng))?;
        lu_deviation = lu_deviation.max((concurrence(&rotated)?.value - before).abs());
    }
    let lu_ok = lu_deviation < 1e-10;

    let mut werner_deviation: f64 = 0.0;
    for k in 0..=100 {
        let w = k as f64 / 100.0;
        let expected = ((3.0 * w - 1.0) / 2.0).max(0.0);
        werner_deviation = werner_deviation.max((concurrence(&werner(w)?)?.value - expected).abs());
    }
    let werner_ok = werner_deviation <= 1e-10;

    let none = NoiseSpec::depolarizing(0.0)?;
    let mut reference_deviation: f64 = 0.0;
    for k in 0..=200 {
        let phi = -PI + 2.0 * PI * k as f64 / 200.0;
        reference_deviation =
            reference_deviation.max((reference_concurrence(phi, &none)? - (phi / 2.0).sin().abs()).abs());
    }
    let reference_ok = reference_deviation <= 1e-12;

    verdict(
        channels_ok && lu_ok && werner_ok && reference_ok,
        format!(
            "channel trace error {trace_error:.2e}, min eigenvalue {min_eigenvalue:.2e}; \
             LU deviation {lu_deviation:.2e}; Werner {werner_deviation:.2e}; reference {reference_deviation:.2e}"
        ),
    )
}

fn csv_bytes(config: &SweepConfig, workers: usize) -> Result<Vec<u8>> {
    let mut buf = Vec::new();
    write_csv(&run_preset_with_workers(config, workers)?, &mut buf)?;
    Ok(buf)
}

fn determinism() -> Result<Verdict> {
    let mut differing = Vec::new();
    for &preset in Preset::ALL.iter().filter(|&&p| p != Preset::Custom) {
        let config = SweepConfig::preset(preset);
        let first = csv_bytes(&config, 1)?;
        let second = csv_bytes(&config, 2)?;
        if first != second {
            differing.push(preset.name());
        }
    }
    verdict(
        differing.is_empty(),
        format!("presets differing between a 1-worker and a 2-worker run: {differing:?}"),
    )
}

fn main() -> ExitCode {
    let criteria: [(&str, Criterion); 12] = [
        ("success probability oracle", success_probability_oracle),
        ("GHZ extraction exactness", ghz_extraction),
        ("Kraus closed form", kraus_closed_form),
        ("fig2 reproduction", fig2),
        ("coherent-error optimum", coherent_error_optimum),
        ("fig3c region claim", fig3c_region),
        ("depolarizing robustness", depolarizing_robustness),
        ("basis stability under noise", basis_stability),
        ("dephasing analogue", dephasing_analogue),
        ("deterministic phi = pi conversion", cluster_conversion),
        ("property suites", property_suites),
        ("determinism", determinism),
    ];
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let v = run().unwrap_or_else(|e| Verdict { passed: false, detail: format!("error: {e}") });
        if !v.passed {
            failures += 1;
        }
        println!("[{}] {:>2}. {name}: {}", if v.passed { "PASS" } else { "FAIL" }, i + 1, v.detail);
    }
    println!("acceptance: {} passed, {failures} failed", criteria.len() - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
