use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Result};
use clap::Parser;

use asytop_cli::presets::{preset, PRESET_NAMES};
use asytop_cli::spec::ExperimentSpec;
use asytop_cli::{run_experiment, write_reports, Format};

/// Batch experiment runner for asymptotic-Toeplitzness diagnostics on
/// truncated Hardy spaces of the unit sphere.
#[derive(Parser, Debug)]
#[command(name = "asytop", version, about)]
struct Cli {
    /// Path to a JSON experiment spec.
    #[arg(long, conflicts_with = "preset")]
    spec: Option<PathBuf>,

    /// Name of a built-in experiment (see --list-presets).
    #[arg(long)]
    preset: Option<String>,

    /// List the built-in experiments and exit.
    #[arg(long)]
    list_presets: bool,

    /// Output directory for report.json / series.csv.
    #[arg(long, default_value = "out")]
    out: PathBuf,

    /// Override the experiment seed.
    #[arg(long)]
    seed: Option<u64>,

    /// Omit the timestamp field, making report.json bit-reproducible.
    #[arg(long)]
    no_timestamp: bool,

    /// Which report files to write.
    #[arg(long, default_value = "both", value_parser = parse_format)]
    format: Format,

    /// Also dump the recipe operator as operator.json and operator.csv.
    #[arg(long)]
    dump_operator: bool,
}

fn parse_format(s: &str) -> Result<Format, String> {
    match s {
        "json" => Ok(Format::Json),
        "csv" => Ok(Format::Csv),
        "both" => Ok(Format::Both),
        other => Err(format!("unknown format '{other}' (expected json|csv|both)")),
    }
}

fn load_spec(cli: &Cli) -> Result<ExperimentSpec> {
    if let Some(name) = &cli.preset {
        return preset(name, cli.seed)
            .ok_or_else(|| anyhow!("unknown preset '{name}'; try --list-presets"));
    }
    if let Some(path) = &cli.spec {
        let text = std::fs::read_to_string(path)
            .map_err(|e| anyhow!("reading {}: {e}", path.display()))?;
        let mut spec = ExperimentSpec::from_json(&text)?;
        if let Some(seed) = cli.seed {
            spec.params.seed = seed;
        }
        return Ok(spec);
    }
    bail!("one of --spec or --preset is required (or --list-presets)");
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.list_presets {
        for name in PRESET_NAMES {
            println!("{name}");
        }
        return ExitCode::SUCCESS;
    }
    let spec = match load_spec(&cli) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    let outcome = match run_experiment(&spec, !cli.no_timestamp) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    if let Err(e) = write_reports(&outcome, &cli.out, cli.format) {
        eprintln!("error: {e:#}");
        return ExitCode::from(2);
    }
    if cli.dump_operator {
        if let Err(e) = dump_operator(&spec, &cli.out) {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    }
    if let Some(v) = &outcome.report.verdict {
        println!("{}: verdict {v}", outcome.report.name);
    }
    for check in &outcome.report.checks {
        println!(
            "{}: check {} {} ({})",
            outcome.report.name,
            check.name,
            if check.pass { "PASS" } else { "FAIL" },
            check.detail
        );
    }
    ExitCode::from(outcome.exit_code as u8)
}

fn dump_operator(spec: &ExperimentSpec, out: &std::path::Path) -> Result<()> {
    let op = asytop_cli::runner::build_standalone(spec)?;
    let dump = op.dump();
    std::fs::write(
        out.join("operator.json"),
        serde_json::to_string_pretty(&dump)? + "\n",
    )?;
    std::fs::write(out.join("operator.csv"), op.orthonormal_csv())?;
    Ok(())
}
