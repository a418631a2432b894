//! Experiment runner: presets, seeded ensembles, parallel averaging and CSV
//! output.

pub mod config;
pub mod csv;
pub mod run;

use std::path::{Path, PathBuf};

use crate::error::{Error, Result};

pub use config::{ExperimentConfig, ExperimentKind, ModelKind};
pub use csv::{emit_csv, parse_csv, read_csv, render_csv, ExperimentRow, CSV_HEADER};
pub use run::{run_experiment, sweep_offsets, ExperimentOutput};

/// `<out>.config`.
pub fn config_echo_path(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".config");
    PathBuf::from(s)
}

/// Runs `config` and writes the CSV plus its config echo when an output path
/// is set.
pub fn run_and_write(config: &ExperimentConfig) -> Result<ExperimentOutput> {
    config.validate()?;
    if let Some(out) = &config.out {
        let echo = config_echo_path(out);
        std::fs::write(&echo, config.to_config_string()).map_err(|e| Error::io(echo.display().to_string(), e))?;
    }
    let output = run_experiment(config)?;
    if let Some(out) = &config.out {
        emit_csv(&output.rows, out)?;
    }
    Ok(output)
}
