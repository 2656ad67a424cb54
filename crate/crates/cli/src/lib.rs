//! Report generation behind the `planestat` command.

pub mod app;
pub mod checks;
pub mod commands;
pub mod config;
pub mod report;

pub use config::{Command, OutputFormat, RunConfig};
pub use report::Report;

/// Renders a report in the configured format.
pub fn render(report: &Report) -> Result<String, String> {
    match report.config.format {
        OutputFormat::Csv => report.to_csv().map_err(|e| e.to_string()),
        OutputFormat::Json => report.to_json().map_err(|e| e.to_string()),
    }
}
