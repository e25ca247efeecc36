//! Python bindings for the `wgs_ghz` crate.

use nalgebra::{DMatrix, Matrix4};
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use wgs_core::harness::sweep::noisy_success as core_noisy_success;
use wgs_core::harness::verify::run_checks;
use wgs_core::harness::{run_preset, write_csv, Preset, SweepConfig};
use wgs_core::metrics;
use wgs_core::optimize;
use wgs_core::protocol;
use wgs_core::qsim::{self, Complex64, QuantumState};
use wgs_core::wgs::{self, ChainSpec, WeightedGraph};
use wgs_core::Error;

fn to_py(e: Error) -> PyErr {
    match e {
        Error::Io(_) | Error::Csv(_) => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn angle(text_or_value: &Bound<'_, PyAny>) -> PyResult<f64> {
    if let Ok(v) = text_or_value.extract::<f64>() {
        return Ok(v);
    }
    let text: String = text_or_value.extract()?;
    wgs::parse_angle(&text).map_err(PyValueError::new_err)
}

/// Projective single-qubit basis with |m+> = cos(t/2)|0> + e^{il} sin(t/2)|1>.
#[pyclass(name = "MeasurementBasis", frozen, from_py_object)]
#[derive(Clone, Copy)]
struct PyMeasurementBasis(qsim::MeasurementBasis);

#[pymethods]
impl PyMeasurementBasis {
    #[new]
    fn new(theta: f64, lam: f64) -> Self {
        Self(qsim::MeasurementBasis::new(theta, lam))
    }

    /// The equatorial basis whose -1 outcome concentrates a CP(phi) chain.
    #[staticmethod]
    fn m_phi(phi: f64) -> Self {
        Self(qsim::MeasurementBasis::m_phi(phi))
    }

    #[getter]
    fn theta(&self) -> f64 {
        self.0.theta()
    }

    #[getter]
    fn lam(&self) -> f64 {
        self.0.lambda()
    }

    fn plus_vector(&self) -> [Complex64; 2] {
        self.0.plus_vector()
    }

    fn minus_vector(&self) -> [Complex64; 2] {
        self.0.minus_vector()
    }

    fn __repr__(&self) -> String {
        format!("MeasurementBasis(theta={}, lam={})", self.0.theta(), self.0.lambda())
    }
}

/// Single-qubit Pauli noise: kind is "depolarizing" or "dephasing".
#[pyclass(name = "NoiseSpec", frozen, from_py_object)]
#[derive(Clone, Copy)]
struct PyNoiseSpec(qsim::NoiseSpec);

#[pymethods]
impl PyNoiseSpec {
    #[new]
    fn new(kind: &str, p: f64) -> PyResult<Self> {
        let kind: qsim::NoiseKind = kind.parse().map_err(to_py)?;
        Ok(Self(qsim::NoiseSpec::new(kind, p).map_err(to_py)?))
    }

    #[getter]
    fn kind(&self) -> String {
        self.0.kind().to_string()
    }

    #[getter]
    fn probability(&self) -> f64 {
        self.0.probability()
    }

    fn __repr__(&self) -> String {
        format!("NoiseSpec('{}', {})", self.0.kind(), self.0.probability())
    }
}

fn noise_or_none(noise: Option<PyNoiseSpec>) -> PyResult<qsim::NoiseSpec> {
    match noise {
        Some(n) => Ok(n.0),
        None => qsim::NoiseSpec::depolarizing(0.0).map_err(to_py),
    }
}

fn path_graph(weights: &[f64]) -> PyResult<WeightedGraph> {
    WeightedGraph::path(weights).map_err(to_py)
}

/// Closed-form probability that all n measurements give -1.
#[pyfunction]
fn success_probability(n: usize, phi: f64) -> f64 {
    protocol::success_probability(n, phi)
}

/// Parses "0.8pi", "pi", "-pi" or a decimal number of radians.
#[pyfunction]
fn parse_angle(text: &str) -> PyResult<f64> {
    wgs::parse_angle(text).map_err(PyValueError::new_err)
}

/// Amplitudes of the weighted graph state on a path with the given weights.
#[pyfunction]
fn chain_state(weights: Vec<f64>) -> PyResult<Vec<Complex64>> {
    let psi = wgs::build_state(&path_graph(&weights)?).map_err(to_py)?;
    Ok(psi.amplitudes().to_vec())
}

/// Closed-form Kraus pair (K+, K-) as 4x4 nested lists.
#[pyfunction]
fn kraus_pair(phi: f64) -> (Vec<Vec<Complex64>>, Vec<Vec<Complex64>>) {
    let k = protocol::kraus_pair(phi);
    let rows = |m: &Matrix4<Complex64>| (0..4).map(|r| (0..4).map(|c| m[(r, c)]).collect()).collect();
    (rows(&k.k_plus), rows(&k.k_minus))
}

/// Runs the protocol on a uniform chain of 2n+1 qubits and returns every
/// measurement record as a dict with outcomes, probability and success.
#[pyfunction]
#[pyo3(signature = (n, phi, noise=None))]
fn run_protocol<'py>(
    py: Python<'py>,
    n: usize,
    phi: &Bound<'py, PyAny>,
    noise: Option<PyNoiseSpec>,
) -> PyResult<Vec<Bound<'py, PyDict>>> {
    let phi = angle(phi)?;
    let spec = ChainSpec::new(n, phi);
    let bases = vec![qsim::MeasurementBasis::m_phi(phi); n];
    let graph = spec.graph().map_err(to_py)?;
    let rho = wgs::build_noisy_state(&graph, &noise_or_none(noise)?).map_err(to_py)?;
    let records = protocol::run_concentration(&rho, &bases).map_err(to_py)?;
    let ghz = qsim::PureState::ghz(n + 1, 0.0).map_err(to_py)?;
    records
        .iter()
        .map(|r| {
            let d = PyDict::new(py);
            d.set_item("outcomes", r.outcomes.iter().map(|o| o.value()).collect::<Vec<i8>>())?;
            d.set_item("probability", r.probability)?;
            d.set_item("success", r.is_success())?;
            if r.is_success() {
                let corrected = r.apply_correction(phi).map_err(to_py)?;
                if let Some(state) = corrected.post_state {
                    d.set_item("ghz_fidelity", metrics::fidelity_with_pure(&state, &ghz).map_err(to_py)?)?;
                    if state.num_qubits() == 2 {
                        d.set_item("concurrence", metrics::concurrence(&state).map_err(to_py)?.value)?;
                    }
                }
            }
            Ok(d)
        })
        .collect()
}

/// Concurrence of a 4x4 two-qubit density matrix given as nested lists.
#[pyfunction]
fn concurrence(rho: Vec<Vec<Complex64>>) -> PyResult<f64> {
    if rho.len() != 4 || rho.iter().any(|r| r.len() != 4) {
        return Err(PyValueError::new_err("expected a 4x4 matrix"));
    }
    let m = DMatrix::from_fn(4, 4, |r, c| rho[r][c]);
    let rho = qsim::DensityMatrix::new(2, m).map_err(to_py)?;
    Ok(metrics::concurrence(&rho).map_err(to_py)?.value)
}

/// Concurrence of two noisy |+> qubits joined by a single CP(phi).
#[pyfunction]
#[pyo3(signature = (phi, noise=None))]
fn reference_concurrence(phi: f64, noise: Option<PyNoiseSpec>) -> PyResult<f64> {
    metrics::reference_concurrence(phi, &noise_or_none(noise)?).map_err(to_py)
}

/// (concurrence, probability) of the -1 record on a noisy three-qubit chain.
#[pyfunction]
#[pyo3(signature = (phi12, phi23, noise=None))]
fn noisy_success(phi12: f64, phi23: f64, noise: Option<PyNoiseSpec>) -> PyResult<(f64, f64)> {
    core_noisy_success(phi12, phi23, &noise_or_none(noise)?).map_err(to_py)
}

/// Optimizes the middle-qubit basis of a three-qubit chain for the
/// concurrence of the outer pair.
#[pyfunction]
#[pyo3(signature = (phi12, phi23, noise=None))]
fn optimize_basis<'py>(
    py: Python<'py>,
    phi12: f64,
    phi23: f64,
    noise: Option<PyNoiseSpec>,
) -> PyResult<Bound<'py, PyDict>> {
    let rho = wgs::build_noisy_state(&path_graph(&[phi12, phi23])?, &noise_or_none(noise)?).map_err(to_py)?;
    let r = optimize::optimize_basis(&rho).map_err(to_py)?;
    let d = PyDict::new(py);
    d.set_item("basis", PyMeasurementBasis(r.best_basis))?;
    d.set_item("concurrence", r.best_concurrence)?;
    d.set_item("branch", r.best_branch.value())?;
    d.set_item("success_probability", r.success_probability)?;
    d.set_item("evaluations", r.evaluations)?;
    Ok(d)
}

/// Runs a figure preset and returns (columns, rows).
#[pyfunction]
fn sweep(preset: &str) -> PyResult<(Vec<String>, Vec<Vec<f64>>)> {
    let preset: Preset = preset.parse().map_err(to_py)?;
    let table = run_preset(&SweepConfig::preset(preset)).map_err(to_py)?;
    Ok((table.columns, table.rows))
}

/// Runs a sweep described by a `key = value` config text and returns the CSV.
#[pyfunction]
fn sweep_csv(config: &str) -> PyResult<String> {
    let config = SweepConfig::parse(config).map_err(to_py)?;
    let table = run_preset(&config).map_err(to_py)?;
    let mut buf = Vec::new();
    write_csv(&table, &mut buf).map_err(to_py)?;
    String::from_utf8(buf).map_err(|e| PyRuntimeError::new_err(e.to_string()))
}

/// Closed-form self-checks as (name, passed, detail) tuples.
#[pyfunction]
fn verify() -> Vec<(String, bool, String)> {
    run_checks().into_iter().map(|c| (c.name.to_string(), c.passed, c.detail)).collect()
}

#[pymodule(name = "wgs_ghz")]
fn wgs_ghz_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyMeasurementBasis>()?;
    m.add_class::<PyNoiseSpec>()?;
    m.add_function(wrap_pyfunction!(success_probability, m)?)?;
    m.add_function(wrap_pyfunction!(parse_angle, m)?)?;
    m.add_function(wrap_pyfunction!(chain_state, m)?)?;
    m.add_function(wrap_pyfunction!(kraus_pair, m)?)?;
    m.add_function(wrap_pyfunction!(run_protocol, m)?)?;
    m.add_function(wrap_pyfunction!(concurrence, m)?)?;
    m.add_function(wrap_pyfunction!(reference_concurrence, m)?)?;
    m.add_function(wrap_pyfunction!(noisy_success, m)?)?;
    m.add_function(wrap_pyfunction!(optimize_basis, m)?)?;
    m.add_function(wrap_pyfunction!(sweep, m)?)?;
    m.add_function(wrap_pyfunction!(sweep_csv, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add("PRESETS", Preset::ALL.iter().map(|p| p.name()).collect::<Vec<_>>())?;
    Ok(())
}
