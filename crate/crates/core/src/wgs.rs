//! Weighted graphs and the weighted graph states built from them.
//!
//! A weighted graph state is `prod CP_{a,b}(phi_ab) |+>^{⊗N}` over the edge
//! set, where `CP(phi)` puts the phase `e^{i phi}` on `|11>`. Edge weights are
//! stored normalized to `(-pi, pi]` with their sign preserved.
//!
//! Graphs can be read from a small line-oriented text format:
//!
//! ```text
//! vertices 3
//! edge 1 2 0.8pi
//! edge 2 3 2.513
//! ```
//!
//! Blank lines and lines starting with `#` are ignored.

use std::collections::HashSet;
use std::f64::consts::{PI, TAU};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::qsim::{apply_channel, DensityMatrix, NoiseSpec, PureState, QuantumState, MAX_QUBITS};

/// Maps an angle onto `(-pi, pi]`.
pub fn normalize_angle(phi: f64) -> f64 {
    let r = phi.rem_euclid(TAU);
    if r > PI {
        r - TAU
    } else {
        r
    }
}

/// Parses a decimal radian value or a multiple of pi written `<x>pi`
/// (`0.8pi`, `-pi`, `pi`, `1/2pi` is not accepted).
pub fn parse_angle(text: &str) -> std::result::Result<f64, String> {
    let t = text.trim();
    if let Some(coef) = t.strip_suffix("pi") {
        let coef = coef.trim_end_matches('*').trim();
        let x = match coef {
            "" | "+" => 1.0,
            "-" => -1.0,
            c => c.parse::<f64>().map_err(|_| format!("invalid angle `{t}`"))?,
        };
        return Ok(x * PI);
    }
    t.parse::<f64>().map_err(|_| format!("invalid angle `{t}`"))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Edge {
    pub a: usize,
    pub b: usize,
    /// Phase in `(-pi, pi]`.
    pub weight: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct WeightedGraph {
    num_vertices: usize,
    edges: Vec<Edge>,
}

impl WeightedGraph {
    /// Builds a graph from `(a, b, weight)` triples with 1-based vertices.
    pub fn new(num_vertices: usize, edges: &[(usize, usize, f64)]) -> Result<Self> {
        let mut g = Self::empty(num_vertices)?;
        for &(a, b, w) in edges {
            g.add_edge(a, b, w)?;
        }
        Ok(g)
    }

    pub fn empty(num_vertices: usize) -> Result<Self> {
        if num_vertices == 0 || num_vertices > MAX_QUBITS {
            return Err(Error::InvalidGraph(format!(
                "vertex count {num_vertices} outside 1..={MAX_QUBITS}"
            )));
        }
        Ok(Self { num_vertices, edges: Vec::new() })
    }

    pub fn add_edge(&mut self, a: usize, b: usize, weight: f64) -> Result<()> {
        let n = self.num_vertices;
        if a == 0 || b == 0 || a > n || b > n {
            return Err(Error::InvalidGraph(format!("edge ({a}, {b}) has a vertex outside 1..={n}")));
        }
        if a == b {
            return Err(Error::InvalidGraph(format!("self-loop on vertex {a}")));
        }
        if !weight.is_finite() {
            return Err(Error::InvalidGraph(format!("edge ({a}, {b}) has non-finite weight")));
        }
        let key = (a.min(b), a.max(b));
        if self.edges.iter().any(|e| (e.a.min(e.b), e.a.max(e.b)) == key) {
            return Err(Error::InvalidGraph(format!("duplicate edge ({a}, {b})")));
        }
        self.edges.push(Edge { a, b, weight: normalize_angle(weight) });
        Ok(())
    }

    /// Path `1 - 2 - ... - len` with the given per-edge weights.
    pub fn path(weights: &[f64]) -> Result<Self> {
        let edges: Vec<_> = weights.iter().enumerate().map(|(i, &w)| (i + 1, i + 2, w)).collect();
        Self::new(weights.len() + 1, &edges)
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Same graph with the edge list permuted.
    pub fn with_edge_order(&self, order: &[usize]) -> Result<Self> {
        let unique: HashSet<_> = order.iter().copied().collect();
        if order.len() != self.edges.len() || unique.len() != order.len() {
            return Err(Error::InvalidGraph("edge order is not a permutation".into()));
        }
        let edges = order
            .iter()
            .map(|&i| self.edges.get(i).copied())
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::InvalidGraph("edge order index out of range".into()))?;
        Ok(Self { num_vertices: self.num_vertices, edges })
    }
}

impl FromStr for WeightedGraph {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut graph: Option<WeightedGraph> = None;
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.trim();
            if content.is_empty() || content.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = content.split_whitespace().collect();
            let perr = |reason: String| Error::Parse { line, reason };
            match (&mut graph, fields.as_slice()) {
                (None, ["vertices", n]) => {
                    let n = n.parse::<usize>().map_err(|_| perr(format!("invalid vertex count `{n}`")))?;
                    graph = Some(WeightedGraph::empty(n).map_err(|e| perr(e.to_string()))?);
                }
                (None, _) => return Err(perr("expected `vertices <N>` header".into())),
                (Some(_), ["vertices", ..]) => return Err(perr("duplicate `vertices` header".into())),
                (Some(g), ["edge", a, b, w]) => {
                    let a = a.parse::<usize>().map_err(|_| perr(format!("invalid vertex `{a}`")))?;
                    let b = b.parse::<usize>().map_err(|_| perr(format!("invalid vertex `{b}`")))?;
                    let w = parse_angle(w).map_err(perr)?;
                    g.add_edge(a, b, w).map_err(|e| perr(e.to_string()))?;
                }
                (Some(_), ["edge", ..]) => {
                    return Err(perr("expected `edge <a> <b> <weight>`".into()))
                }
                (Some(_), [other, ..]) => return Err(perr(format!("unknown directive `{other}`"))),
                (Some(_), []) => unreachable!("blank lines are skipped"),
            }
        }
        graph.ok_or_else(|| Error::Parse { line: 1, reason: "missing `vertices <N>` header".into() })
    }
}

impl fmt::Display for WeightedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "vertices {}", self.num_vertices)?;
        for e in &self.edges {
            writeln!(f, "edge {} {} {:?}", e.a, e.b, e.weight)?;
        }
        Ok(())
    }
}

/// Uniform chain of `2n + 1` qubits with every edge weighted `phi`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChainSpec {
    pub n: usize,
    pub phi: f64,
}

impl ChainSpec {
    pub fn new(n: usize, phi: f64) -> Self {
        Self { n, phi }
    }

    pub fn num_qubits(&self) -> usize {
        2 * self.n + 1
    }

    pub fn graph(&self) -> Result<WeightedGraph> {
        WeightedGraph::path(&vec![self.phi; 2 * self.n])
    }
}

/// `prod CP_{a,b}(phi_ab) |+>^{⊗N}`.
pub fn build_state(graph: &WeightedGraph) -> Result<PureState> {
    let mut state = PureState::plus(graph.num_vertices())?;
    for e in graph.edges() {
        state = state.apply_controlled_phase(e.a, e.b, e.weight)?;
    }
    Ok(state)
}

pub fn build_uniform_chain(spec: &ChainSpec) -> Result<PureState> {
    build_state(&spec.graph()?)
}

/// Applies `noise` to every qubit of `|+><+|^{⊗N}`, then the graph's CP gates.
pub fn build_noisy_state(graph: &WeightedGraph, noise: &NoiseSpec) -> Result<DensityMatrix> {
    build_noisy_state_per_qubit(graph, &vec![*noise; graph.num_vertices()])
}

/// As [`build_noisy_state`] with a separate channel for each qubit (`noise[0]` is qubit 1).
pub fn build_noisy_state_per_qubit(graph: &WeightedGraph, noise: &[NoiseSpec]) -> Result<DensityMatrix> {
    if noise.len() != graph.num_vertices() {
        return Err(Error::DimensionMismatch { expected: graph.num_vertices(), found: noise.len() });
    }
    let mut rho = PureState::plus(graph.num_vertices())?.to_density();
    for (i, spec) in noise.iter().enumerate() {
        rho = apply_channel(&rho, i + 1, spec)?;
    }
    for e in graph.edges() {
        rho = rho.apply_controlled_phase(e.a, e.b, e.weight)?;
    }
    Ok(rho)
}
