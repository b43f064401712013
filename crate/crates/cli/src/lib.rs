//! Scenario-driven front end for the `gcgeom` verification engine.
//!
//! A scenario is a JSON file naming one pipeline kind and its inputs; running
//! it yields a [`report::Report`] whose bytes depend only on the scenario.

pub mod catalog;
pub mod error;
pub mod pipelines;
pub mod report;
pub mod scenario;

use std::path::Path;

pub use error::CliError;
pub use pipelines::RunOptions;
pub use report::{CheckEntry, Report, Status};
pub use scenario::Scenario;

/// Loads a scenario from a file path, falling back to the bundled catalog.
pub fn load(name_or_path: &str) -> Result<Scenario, CliError> {
    let p = Path::new(name_or_path);
    if p.is_file() {
        let text = std::fs::read_to_string(p).map_err(|e| CliError::Io { path: name_or_path.to_string(), source: e })?;
        return Scenario::from_json(&text);
    }
    match catalog::bundled(name_or_path) {
        Some(b) => Scenario::from_json(b.json),
        None => Err(CliError::UnknownScenario(name_or_path.to_string())),
    }
}

pub fn run(s: &Scenario, opts: RunOptions) -> Result<Report, CliError> {
    pipelines::run(s, opts)
}

/// Loads and runs a bundled scenario.
pub fn run_bundled(name: &str) -> Result<Report, CliError> {
    let b = catalog::bundled(name).ok_or_else(|| CliError::UnknownScenario(name.to_string()))?;
    run(&Scenario::from_json(b.json)?, RunOptions::default())
}
