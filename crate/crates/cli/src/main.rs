//! `magsat`: permittivities, effective potentials, validity diagnostics,
//! spectra, saturation values, shooting cross-checks and figure data.
//!
//! Exit codes: 0 success, 2 usage, 3 solver failure, 4 I/O.

mod args;
mod commands;
mod emit;
mod error;
mod figures;
mod settings;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command, Format};
use commands::Report;
use emit::{manifest_path, to_json, write_atomic, Envelope, RunManifest};
use error::{CliError, CliResult};
use settings::Settings;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("magsat: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn format_of(out: Option<&str>) -> CliResult<Format> {
    match out {
        None | Some("csv") => Ok(Format::Csv),
        Some("json") => Ok(Format::Json),
        Some(other) => Err(CliError::Usage(format!(
            "--out must be csv or json, got {other:?}"
        ))),
    }
}

fn inputs(command: &Command) -> serde_json::Value {
    let v = match command {
        Command::Perm(a) => serde_json::to_value(a),
        Command::Potential(a) => serde_json::to_value(a),
        Command::Validity(a) => serde_json::to_value(a),
        Command::Spectrum(a) => serde_json::to_value(a),
        Command::Saturation(a) => serde_json::to_value(a),
        Command::Oracle(a) => serde_json::to_value(a),
        Command::Figures(a) => serde_json::to_value(a),
    };
    v.expect("arguments serialize")
}

fn run(cli: &Cli) -> CliResult<()> {
    let settings = Settings::resolve(&cli.global)?;
    let manifest = RunManifest::new(cli.command.name(), &settings, inputs(&cli.command))?;

    let (format, report) = if let Command::Figures(a) = &cli.command {
        let dir = cli
            .global
            .out
            .as_deref()
            .ok_or_else(|| CliError::Usage("figures needs --out <dir>".into()))?;
        let out = figures::run(a, &PathBuf::from(dir), &settings, &manifest)?;
        let csv = std::iter::once("file".to_string())
            .chain(out.files.iter().cloned())
            .collect::<Vec<_>>()
            .join("\n")
            + "\n";
        let report = Report {
            csv,
            result: serde_json::to_value(&out).expect("output serializes"),
            table: None,
            warnings: Vec::new(),
        };
        (a.format, report)
    } else {
        let format = format_of(cli.global.out.as_deref())?;
        let report = match &cli.command {
            Command::Perm(a) => commands::perm(a, &settings)?,
            Command::Potential(a) => commands::potential(a, &settings)?,
            Command::Validity(a) => commands::validity(a, &settings)?,
            Command::Spectrum(a) => commands::spectrum(a, &settings)?,
            Command::Saturation(a) => commands::saturation(a, &settings)?,
            Command::Oracle(a) => commands::oracle(a, &settings)?,
            Command::Figures(_) => unreachable!("handled above"),
        };
        (format, report)
    };

    if !cli.global.quiet {
        for w in &report.warnings {
            eprintln!("warning: {w}");
        }
    }
    let payload = match format {
        Format::Csv => report.csv,
        Format::Json => to_json(&Envelope {
            manifest: manifest.clone(),
            result: report.result,
        }),
    };
    if let Some(path) = &cli.global.save {
        write_atomic(path, &payload)?;
        write_atomic(&manifest_path(path), &to_json(&manifest))?;
    }
    let mut stdout = std::io::stdout().lock();
    stdout
        .write_all(payload.as_bytes())
        .map_err(|e| CliError::io("<stdout>", e))?;
    if format == Format::Csv && !cli.global.quiet {
        if let Some(t) = report.table {
            eprint!("{t}");
        }
    }
    Ok(())
}
