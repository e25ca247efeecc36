//! Figure presets, parameter sweeps, table output and the command line.

pub mod cli;
pub mod config;
pub mod output;
pub mod sweep;
pub mod verify;

pub use cli::cli_entry;
pub use config::{Axis, Preset, SweepConfig};
pub use output::{emit_csv, emit_svg_heatmap, format_significant, render_svg_heatmap, write_csv};
pub use sweep::{run_preset, run_preset_with_workers, worker_count, Table, WORKERS_ENV};
