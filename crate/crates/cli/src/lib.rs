//! Experiment runner around the `asytop` library: JSON experiment specs,
//! built-in presets, reproducible JSON/CSV reports.

pub mod presets;
pub mod report;
pub mod runner;
pub mod spec;

use std::path::Path;

use anyhow::{Context, Result};

pub use runner::{run_experiment, Outcome};
pub use spec::ExperimentSpec;

/// Output format selection for report files.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Both,
}

/// Writes `report.json` / `series.csv` (and `oracle.csv` for oracle runs)
/// into `out_dir`, creating it if needed.
pub fn write_reports(outcome: &Outcome, out_dir: &Path, format: Format) -> Result<()> {
    std::fs::create_dir_all(out_dir)
        .with_context(|| format!("creating output directory {}", out_dir.display()))?;
    if matches!(format, Format::Json | Format::Both) {
        std::fs::write(out_dir.join("report.json"), outcome.report.to_json())
            .context("writing report.json")?;
    }
    if matches!(format, Format::Csv | Format::Both) {
        if let Some(csv) = outcome.report.series_csv() {
            std::fs::write(out_dir.join("series.csv"), csv).context("writing series.csv")?;
        }
        if let Some(csv) = outcome.report.oracle_csv() {
            std::fs::write(out_dir.join("oracle.csv"), csv).context("writing oracle.csv")?;
        }
    }
    Ok(())
}
