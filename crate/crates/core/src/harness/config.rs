//! Sweep configuration and its `key = value` file format.
//!
//! ```text
//! # Fig. 4a at a coarser grid
//! preset = fig4a
//! axis = phi 0.05pi 1pi 21
//! axis = p 0 0.05 11
//! out = fig4a.csv
//! ```
//!
//! Recognized keys: `preset`, `axis` (repeatable, replaces the preset's
//! axes), `n`, `phi`, `phi12`, `phi23`, `noise_kind`, `noise_p`, `out`.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::qsim::{NoiseKind, NoiseSpec};
use crate::wgs::parse_angle;

use std::f64::consts::PI;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Preset {
    Fig2,
    Fig3a,
    Fig3b,
    Fig3c,
    Fig4a,
    Fig4b,
    Fig4c,
    Fig5a,
    Fig5b,
    Fig5c,
    Custom,
}

impl Preset {
    pub const ALL: [Preset; 11] = [
        Preset::Fig2,
        Preset::Fig3a,
        Preset::Fig3b,
        Preset::Fig3c,
        Preset::Fig4a,
        Preset::Fig4b,
        Preset::Fig4c,
        Preset::Fig5a,
        Preset::Fig5b,
        Preset::Fig5c,
        Preset::Custom,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Preset::Fig2 => "fig2",
            Preset::Fig3a => "fig3a",
            Preset::Fig3b => "fig3b",
            Preset::Fig3c => "fig3c",
            Preset::Fig4a => "fig4a",
            Preset::Fig4b => "fig4b",
            Preset::Fig4c => "fig4c",
            Preset::Fig5a => "fig5a",
            Preset::Fig5b => "fig5b",
            Preset::Fig5c => "fig5c",
            Preset::Custom => "custom",
        }
    }

    /// Noise family of the fig4/fig5 presets.
    pub fn noise_kind(self) -> Option<NoiseKind> {
        match self {
            Preset::Fig4a | Preset::Fig4b | Preset::Fig4c => Some(NoiseKind::Depolarizing),
            Preset::Fig5a | Preset::Fig5b | Preset::Fig5c => Some(NoiseKind::Dephasing),
            _ => None,
        }
    }

    /// Column drawn by default in a heatmap.
    pub fn heatmap_column(self) -> &'static str {
        match self {
            Preset::Fig2 => "ps",
            Preset::Fig3b => "ps_best_branch",
            Preset::Fig4b | Preset::Fig5b => "ps",
            Preset::Fig3c | Preset::Fig4c | Preset::Fig5c => "delta_c",
            _ => "concurrence",
        }
    }

    fn default_axes(self) -> Vec<Axis> {
        let phi = |count| Axis::new("phi", 0.0, PI, count);
        match self {
            Preset::Fig2 => vec![phi(101)],
            Preset::Fig3a | Preset::Fig3b => {
                vec![Axis::new("phi12", 0.0, PI, 51), Axis::new("phi23", 0.0, PI, 51)]
            }
            Preset::Fig3c => vec![Axis::new("phi23", 0.6 * PI, PI, 101)],
            Preset::Fig4a | Preset::Fig4b | Preset::Fig4c | Preset::Fig5a | Preset::Fig5b | Preset::Fig5c => {
                vec![phi(51), Axis::new("p", 0.0, 0.05, 51)]
            }
            Preset::Custom => vec![phi(51), Axis::new("p", 0.0, 0.05, 51)],
        }
    }

    /// Axis names the preset accepts, in order; `None` means any subset of
    /// the custom parameters.
    fn required_axes(self) -> Option<&'static [&'static str]> {
        match self {
            Preset::Fig2 => Some(&["phi"]),
            Preset::Fig3a | Preset::Fig3b => Some(&["phi12", "phi23"]),
            Preset::Fig3c => Some(&["phi23"]),
            Preset::Custom => None,
            _ => Some(&["phi", "p"]),
        }
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Preset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase();
        Preset::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown preset `{s}`")))
    }
}

const CUSTOM_AXES: [&str; 4] = ["phi", "phi12", "phi23", "p"];

/// Inclusive linear grid.
#[derive(Clone, Debug, PartialEq)]
pub struct Axis {
    pub name: String,
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

impl Axis {
    pub fn new(name: &str, start: f64, stop: f64, count: usize) -> Self {
        Self { name: name.to_string(), start, stop, count }
    }

    pub fn values(&self) -> Vec<f64> {
        let last = (self.count - 1) as f64;
        (0..self.count)
            .map(|i| {
                if i + 1 == self.count {
                    self.stop
                } else {
                    self.start + (self.stop - self.start) * (i as f64 / last)
                }
            })
            .collect()
    }

    fn parse(text: &str) -> std::result::Result<Self, String> {
        let fields: Vec<&str> = text.split_whitespace().collect();
        let [name, start, stop, count] = fields.as_slice() else {
            return Err("expected `axis = <name> <start> <stop> <count>`".into());
        };
        let count = count.parse::<usize>().map_err(|_| format!("invalid point count `{count}`"))?;
        Ok(Self::new(name, parse_angle(start)?, parse_angle(stop)?, count))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepConfig {
    pub preset: Preset,
    pub axes: Vec<Axis>,
    /// Fixed noise; the `p` axis, when present, overrides its probability.
    pub noise: Option<NoiseSpec>,
    /// Chain parameter for fig2 (`2n + 1` qubits).
    pub n: usize,
    /// Fixed first weight for fig3c and custom runs.
    pub phi12: f64,
    /// Fixed second weight for custom runs.
    pub phi23: f64,
    pub output: Option<PathBuf>,
}

impl SweepConfig {
    pub fn preset(preset: Preset) -> Self {
        Self {
            preset,
            axes: preset.default_axes(),
            noise: preset.noise_kind().map(|k| NoiseSpec::new(k, 0.0).expect("0 is a valid probability")),
            n: 2,
            phi12: 0.8 * PI,
            phi23: 0.8 * PI,
            output: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.axes.is_empty() || self.axes.len() > 2 {
            return Err(Error::Config(format!("expected 1 or 2 axes, got {}", self.axes.len())));
        }
        for a in &self.axes {
            if a.count < 2 {
                return Err(Error::Config(format!("axis `{}` needs at least 2 points", a.name)));
            }
            if !a.start.is_finite() || !a.stop.is_finite() {
                return Err(Error::Config(format!("axis `{}` has a non-finite bound", a.name)));
            }
            if a.name == "p" {
                for v in [a.start, a.stop] {
                    if !(0.0..=1.0).contains(&v) {
                        return Err(Error::Config(format!("axis `p` bound {v} outside [0, 1]")));
                    }
                }
            }
        }
        let names: Vec<&str> = self.axes.iter().map(|a| a.name.as_str()).collect();
        match self.preset.required_axes() {
            Some(required) if names != required => {
                return Err(Error::Config(format!(
                    "preset {} sweeps axes {:?}, got {:?}",
                    self.preset, required, names
                )));
            }
            None => {
                if let Some(bad) = names.iter().find(|n| !CUSTOM_AXES.contains(n)) {
                    return Err(Error::Config(format!(
                        "unknown axis `{bad}` (custom sweeps accept {CUSTOM_AXES:?})"
                    )));
                }
                if names.len() == 2 && names[0] == names[1] {
                    return Err(Error::Config("axes must differ".into()));
                }
                if names.contains(&"phi") && (names.contains(&"phi12") || names.contains(&"phi23")) {
                    return Err(Error::Config("`phi` sets both weights; do not combine with phi12/phi23".into()));
                }
            }
            _ => {}
        }
        if self.preset == Preset::Fig2 && (self.n == 0 || self.n > 5) {
            return Err(Error::Config(format!("n = {} outside 1..=5", self.n)));
        }
        Ok(())
    }

    /// Parses the `key = value` format. Unknown keys are errors.
    pub fn parse(text: &str) -> Result<Self> {
        let mut entries = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (key, value) = content.split_once('=').ok_or_else(|| Error::Parse {
                line,
                reason: "expected `key = value`".into(),
            })?;
            entries.push((line, key.trim().to_ascii_lowercase(), value.trim().to_string()));
        }

        let preset = entries
            .iter()
            .rfind(|(_, k, _)| k == "preset")
            .map(|(line, _, v)| v.parse::<Preset>().map_err(|e| Error::Parse { line: *line, reason: e.to_string() }))
            .transpose()?
            .unwrap_or(Preset::Custom);
        let mut config = Self::preset(preset);
        let mut axes = Vec::new();
        let mut noise_kind = preset.noise_kind();
        let mut noise_p: Option<f64> = None;

        for (line, key, value) in entries {
            let perr = |reason: String| Error::Parse { line, reason };
            match key.as_str() {
                "preset" => {}
                "axis" => axes.push(Axis::parse(&value).map_err(perr)?),
                "n" => config.n = value.parse().map_err(|_| perr(format!("invalid n `{value}`")))?,
                "phi" => {
                    let phi = parse_angle(&value).map_err(perr)?;
                    config.phi12 = phi;
                    config.phi23 = phi;
                }
                "phi12" => config.phi12 = parse_angle(&value).map_err(perr)?,
                "phi23" => config.phi23 = parse_angle(&value).map_err(perr)?,
                "noise_kind" => noise_kind = Some(value.parse().map_err(|e: Error| perr(e.to_string()))?),
                "noise_p" => {
                    noise_p = Some(value.parse().map_err(|_| perr(format!("invalid probability `{value}`")))?)
                }
                "out" => config.output = Some(PathBuf::from(value)),
                other => return Err(perr(format!("unknown key `{other}`"))),
            }
        }
        if !axes.is_empty() {
            config.axes = axes;
        }
        if noise_kind.is_some() || noise_p.is_some() {
            let kind = noise_kind.unwrap_or(NoiseKind::Depolarizing);
            config.noise = Some(NoiseSpec::new(kind, noise_p.unwrap_or(0.0)).map_err(|e| Error::Config(e.to_string()))?);
        }
        config.validate()?;
        Ok(config)
    }
}
