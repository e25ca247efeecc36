use rayon::prelude::*;

use super::config::{Axis, Preset, SweepConfig};
use crate::error::{Error, Result};
use crate::metrics::{concurrence, concurrence_advantage, reference_concurrence};
use crate::optimize::{analytic_basis_guess, optimize_basis};
use crate::protocol::success_branch;
use crate::qsim::{MeasurementBasis, NoiseKind, NoiseSpec, QuantumState};
use crate::wgs::{build_noisy_state, build_state, build_uniform_chain, ChainSpec, WeightedGraph};

/// Environment variable selecting the sweep worker count.
pub const WORKERS_ENV: &str = "WGS_GHZ_WORKERS";

/// Linear-optics success probability for a three-qubit GHZ state.
pub const LINEAR_OPTICS_BASELINE: f64 = 1.0 / 32.0;

#[derive(Clone, Debug, PartialEq)]
pub struct Table {
    pub preset: Preset,
    pub axes: Vec<Axis>,
    pub columns: Vec<String>,
    /// Row-major over the axes (first axis outermost).
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn column_index(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let i = self.column_index(name)?;
        Some(self.rows.iter().map(|r| r[i]).collect())
    }
}

/// Worker count from the environment, else the available parallelism.
pub fn worker_count() -> usize {
    std::env::var(WORKERS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&n| n > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}

pub fn run_preset(config: &SweepConfig) -> Result<Table> {
    run_preset_with_workers(config, worker_count())
}

pub fn run_preset_with_workers(config: &SweepConfig, workers: usize) -> Result<Table> {
    config.validate()?;
    let points = grid_points(&config.axes);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::Config(format!("cannot start worker pool: {e}")))?;
    let rows: Vec<Vec<f64>> = pool.install(|| {
        points
            .par_iter()
            .map(|p| evaluate_point(config, p))
            .collect::<Result<Vec<_>>>()
    })?;
    Ok(Table { preset: config.preset, axes: config.axes.clone(), columns: columns(config), rows })
}

fn grid_points(axes: &[Axis]) -> Vec<Vec<f64>> {
    axes.iter().fold(vec![Vec::new()], |acc, axis| {
        let values = axis.values();
        acc.iter()
            .flat_map(|prefix| {
                values.iter().map(move |&v| {
                    let mut p = prefix.clone();
                    p.push(v);
                    p
                })
            })
            .collect()
    })
}

fn columns(config: &SweepConfig) -> Vec<String> {
    let fixed: &[&str] = match config.preset {
        Preset::Fig2 => &["phi", "ps", "baseline"],
        Preset::Fig3a | Preset::Fig3b => {
            &["phi12", "phi23", "concurrence", "ps_minus_branch", "ps_best_branch"]
        }
        Preset::Fig3c => &["phi23", "concurrence", "reference_concurrence", "delta_c"],
        Preset::Custom => &[],
        _ => &["phi", "p", "concurrence", "ps", "reference_concurrence", "delta_c"],
    };
    if config.preset == Preset::Custom {
        config
            .axes
            .iter()
            .map(|a| a.name.clone())
            .chain(["concurrence", "ps", "reference_concurrence", "delta_c"].map(String::from))
            .collect()
    } else {
        fixed.iter().map(|s| s.to_string()).collect()
    }
}

fn evaluate_point(config: &SweepConfig, point: &[f64]) -> Result<Vec<f64>> {
    match config.preset {
        Preset::Fig2 => {
            let phi = point[0];
            let spec = ChainSpec::new(config.n, phi);
            let bases = vec![MeasurementBasis::m_phi(phi); config.n];
            let ps = success_branch(&build_uniform_chain(&spec)?, &bases)?.probability;
            Ok(vec![phi, ps, LINEAR_OPTICS_BASELINE])
        }
        Preset::Fig3a | Preset::Fig3b => {
            let (phi12, phi23) = (point[0], point[1]);
            let r = optimize_basis(&build_state(&WeightedGraph::path(&[phi12, phi23])?)?)?;
            Ok(vec![phi12, phi23, r.best_concurrence, r.minus_probability, r.success_probability])
        }
        Preset::Fig3c => {
            let phi23 = point[0];
            let r = optimize_basis(&build_state(&WeightedGraph::path(&[config.phi12, phi23])?)?)?;
            let noiseless = NoiseSpec::depolarizing(0.0)?;
            let c_ref = reference_concurrence(config.phi12.max(phi23), &noiseless)?;
            Ok(vec![phi23, r.best_concurrence, c_ref, concurrence_advantage(r.best_concurrence, c_ref)])
        }
        Preset::Custom => {
            let mut phi12 = config.phi12;
            let mut phi23 = config.phi23;
            let mut noise = config.noise.unwrap_or(NoiseSpec::depolarizing(0.0)?);
            for (axis, &v) in config.axes.iter().zip(point) {
                match axis.name.as_str() {
                    "phi" => {
                        phi12 = v;
                        phi23 = v;
                    }
                    "phi12" => phi12 = v,
                    "phi23" => phi23 = v,
                    "p" => noise = NoiseSpec::new(noise.kind(), v)?,
                    other => return Err(Error::Config(format!("unknown axis `{other}`"))),
                }
            }
            let (c, ps) = noisy_success(phi12, phi23, &noise)?;
            let c_ref = reference_concurrence(phi12.max(phi23), &noise)?;
            let mut row = point.to_vec();
            row.extend([c, ps, c_ref, concurrence_advantage(c, c_ref)]);
            Ok(row)
        }
        preset => {
            let kind = preset.noise_kind().unwrap_or(NoiseKind::Depolarizing);
            let (phi, p) = (point[0], point[1]);
            let noise = NoiseSpec::new(kind, p)?;
            let (c, ps) = noisy_success(phi, phi, &noise)?;
            let c_ref = reference_concurrence(phi, &noise)?;
            Ok(vec![phi, p, c, ps, c_ref, concurrence_advantage(c, c_ref)])
        }
    }
}

/// Concurrence and probability of the `-1` record on a noisy three-qubit
/// chain measured in `M_{(phi12 + phi23)/2}`.
pub fn noisy_success(phi12: f64, phi23: f64, noise: &NoiseSpec) -> Result<(f64, f64)> {
    let rho = build_noisy_state(&WeightedGraph::path(&[phi12, phi23])?, noise)?;
    let record = success_branch(&rho, &[analytic_basis_guess(phi12, phi23)])?;
    let c = match &record.post_state {
        Some(s) => concurrence(&s.to_density())?.value,
        None => 0.0,
    };
    Ok((c, record.probability))
}
