//! Configuration-driven front end for `drivenq-core`: dynamics runs, frequency
//! scans, rotating-wave curves, Bloch–Siegert shift extraction and the
//! two-qubit reduction check, each written as a CSV table with a metadata
//! sidecar.

pub mod config;
pub mod output;
pub mod run;

pub use config::{parse_config, ConfigError, Mode, RunConfig};
pub use run::{run, write_outputs, Report, RunError, RunOptions};
