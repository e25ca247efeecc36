use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use super::config::{Preset, SweepConfig};
use super::output::{emit_csv, emit_svg_heatmap, write_csv};
use super::sweep::run_preset;
use super::verify::run_checks;
use crate::error::{Error, Result};
use crate::metrics::{concurrence, fidelity_with_pure};
use crate::protocol::{run_concentration, success_probability, ProtocolOutcome};
use crate::qsim::{MeasurementBasis, NoiseKind, NoiseSpec, PureState, QuantumState};
use crate::wgs::{build_noisy_state, build_uniform_chain, parse_angle, ChainSpec};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VERIFY_FAILED: i32 = 2;

/// Largest `n` accepted by `run` (a `2n + 1`-qubit chain).
const MAX_RUN_N: usize = 5;

#[derive(Debug, Parser)]
#[command(name = "wgs-ghz", version, about = "GHZ extraction from weighted graph state chains")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run the protocol once on a uniform chain of 2n+1 qubits.
    Run(RunArgs),
    /// Produce a figure table as CSV (and optionally an SVG heatmap).
    Sweep(SweepArgs),
    /// Run the closed-form self-checks.
    Verify,
}

#[derive(Debug, Args)]
struct RunArgs {
    #[arg(long, default_value_t = 1)]
    n: usize,
    /// Edge weight, in radians or as `<x>pi`.
    #[arg(long, default_value = "0.8pi", allow_hyphen_values = true)]
    phi: String,
    /// `depolarizing` or `dephasing`.
    #[arg(long)]
    noise_kind: Option<String>,
    #[arg(long)]
    noise_p: Option<f64>,
}

#[derive(Debug, Args)]
struct SweepArgs {
    #[arg(long, conflicts_with = "config", required_unless_present = "config")]
    preset: Option<String>,
    /// `key = value` configuration file.
    #[arg(long)]
    config: Option<PathBuf>,
    /// CSV destination; printed to stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write an SVG heatmap next to the CSV.
    #[arg(long, requires = "out")]
    svg: bool,
    /// Column drawn in the heatmap (default depends on the preset).
    #[arg(long, requires = "svg")]
    column: Option<String>,
}

/// Parses `argv` (including the program name) and runs the command.
pub fn cli_entry<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{text}");
                    EXIT_USAGE
                }
            };
        }
    };
    let result = match cli.command {
        Command::Run(args) => run(args, out),
        Command::Sweep(args) => sweep(args, out),
        Command::Verify => return verify(out),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn run(args: RunArgs, out: &mut dyn Write) -> Result<()> {
    let phi = parse_angle(&args.phi).map_err(Error::Config)?;
    if args.n > MAX_RUN_N {
        return Err(Error::Config(format!("--n {} exceeds {MAX_RUN_N}", args.n)));
    }
    let noise = match (&args.noise_kind, args.noise_p) {
        (None, None) => None,
        (kind, p) => {
            let kind = kind.as_deref().map(str::parse::<NoiseKind>).transpose()?.unwrap_or(NoiseKind::Depolarizing);
            Some(NoiseSpec::new(kind, p.unwrap_or(0.0)).map_err(|e| Error::Config(e.to_string()))?)
        }
    };
    let spec = ChainSpec::new(args.n, phi);
    let bases = vec![MeasurementBasis::m_phi(phi); args.n];
    writeln!(out, "chain: {} qubits, n = {}, phi = {phi}", spec.num_qubits(), args.n)?;
    match noise {
        Some(noise) => {
            writeln!(out, "noise: {} p = {}", noise.kind(), noise.probability())?;
            let rho = build_noisy_state(&spec.graph()?, &noise)?;
            report(&run_concentration(&rho, &bases)?, &spec, out)
        }
        None => {
            writeln!(out, "noise: none")?;
            let psi = build_uniform_chain(&spec)?;
            report(&run_concentration(&psi, &bases)?, &spec, out)
        }
    }
}

fn report<S: QuantumState>(records: &[ProtocolOutcome<S>], spec: &ChainSpec, out: &mut dyn Write) -> Result<()> {
    let success = records.iter().find(|r| r.is_success()).expect("the all -1 record is enumerated");
    writeln!(out, "success probability (closed form): {:.12}", success_probability(spec.n, spec.phi))?;
    writeln!(out, "success probability (simulated):   {:.12}", success.probability)?;
    writeln!(out, "branches:")?;
    for r in records {
        let label: Vec<String> = r.outcomes.iter().map(|o| o.to_string()).collect();
        let label = if label.is_empty() { "(none)".to_string() } else { label.join(" ") };
        writeln!(out, "  {label:<16} {:.12}{}", r.probability, if r.is_success() { "  success" } else { "" })?;
    }
    let corrected = success.apply_correction(spec.phi)?;
    match corrected.post_state {
        Some(state) => {
            let rho = state.to_density();
            let target = PureState::ghz(spec.n + 1, 0.0)?;
            writeln!(out, "GHZ fidelity after correction: {:.12}", fidelity_with_pure(&rho, &target)?)?;
            if rho.num_qubits() == 2 {
                writeln!(out, "concurrence: {:.12}", concurrence(&rho)?.value)?;
            } else {
                writeln!(out, "concurrence: n/a ({} surviving qubits)", rho.num_qubits())?;
            }
        }
        None => writeln!(out, "success branch has zero probability")?,
    }
    Ok(())
}

fn sweep(args: SweepArgs, out: &mut dyn Write) -> Result<()> {
    let mut config = match (&args.preset, &args.config) {
        (Some(p), _) => SweepConfig::preset(p.parse::<Preset>()?),
        (None, Some(path)) => SweepConfig::parse(&std::fs::read_to_string(path)?)?,
        (None, None) => return Err(Error::Config("need --preset or --config".into())),
    };
    if args.out.is_some() {
        config.output = args.out.clone();
    }
    let table = run_preset(&config)?;
    match &config.output {
        Some(path) => {
            emit_csv(&table, path)?;
            writeln!(out, "wrote {} rows to {}", table.rows.len(), path.display())?;
            if args.svg {
                let column = args.column.as_deref().unwrap_or(config.preset.heatmap_column());
                let svg_path = path.with_extension("svg");
                emit_svg_heatmap(&table, column, &svg_path)?;
                writeln!(out, "wrote heatmap of `{column}` to {}", svg_path.display())?;
            }
        }
        None => write_csv(&table, &mut *out)?,
    }
    Ok(())
}

fn verify(out: &mut dyn Write) -> i32 {
    let checks = run_checks();
    for c in &checks {
        let _ = writeln!(out, "{} {} ({})", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
    }
    if checks.iter().all(|c| c.passed) {
        EXIT_OK
    } else {
        EXIT_VERIFY_FAILED
    }
}
