//! Simulation of GHZ-state extraction from one-dimensional weighted graph
//! states by single-qubit measurements and post-selection.
//!
//! The crate is organized bottom-up:
//!
//! - [`qsim`]: dense pure-state and density-matrix engine with Pauli noise.
//! - [`wgs`]: weighted graphs and weighted graph state construction.
//! - [`protocol`]: the concentration protocol, its Kraus operators and
//!   closed-form success probability.
//! - [`metrics`]: Wootters concurrence and fidelities.
//! - [`optimize`]: measurement-basis optimization for three-qubit chains.
//! - [`harness`]: sweep presets, CSV/SVG output and the command-line entry point.

pub mod error;
pub mod harness;
pub mod metrics;
pub mod optimize;
pub mod protocol;
pub mod qsim;
pub mod wgs;

pub use error::{Error, Result};
