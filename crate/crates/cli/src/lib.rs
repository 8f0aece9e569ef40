//! Experiment driver: runs the entropy, noisy-spectrum, reconstruction and
//! cross-entropy experiments and writes versioned CSV/JSON outputs.

pub mod config;
pub mod error;
pub mod experiments;
pub mod output;

pub use config::{ExperimentConfig, Params};
pub use error::{CliError, CliResult};
pub use output::{run_experiment, Manifest};
