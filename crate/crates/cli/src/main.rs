mod args;
mod commands;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};
use commands::{CliError, Exit, Report};

/// Where output goes: an explicit path (inside the output directory when
/// relative and one is set), a default-named file in the output directory,
/// or stdout.
fn destination(output: Option<&Path>, dir: Option<&Path>, default_name: &str) -> Option<PathBuf> {
    match (output, dir) {
        (Some(p), Some(d)) if p.is_relative() => Some(d.join(p)),
        (Some(p), _) => Some(p.to_path_buf()),
        (None, Some(d)) => Some(d.join(default_name)),
        (None, None) => None,
    }
}

fn write_file(path: &Path, body: &str) -> Result<(), CliError> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(parent).map_err(|e| CliError::Internal(format!("{}: {e}", parent.display())))?;
    }
    fs::write(path, body).map_err(|e| CliError::Internal(format!("{}: {e}", path.display())))
}

fn emit(cli: &Cli, report: &Report) -> Result<(), CliError> {
    match destination(cli.output.as_deref(), cli.output_dir.as_deref(), &report.default_name) {
        Some(path) => write_file(&path, &report.body),
        None => {
            std::io::stdout().write_all(report.body.as_bytes()).map_err(|e| CliError::Internal(format!("stdout: {e}")))
        }
    }
}

fn run(cli: &Cli) -> Result<Exit, CliError> {
    let report = match &cli.command {
        Command::Bounds { command } => commands::run_bounds(command, cli.format)?,
        Command::Search(args) => {
            let (report, cert) = commands::run_search(args, cli.format)?;
            if let Some(path) = &args.matrix_out {
                match cert.matrix_text() {
                    Some(text) => {
                        let path = destination(Some(path), cli.output_dir.as_deref(), "").expect("path given");
                        write_file(&path, &text)?;
                    }
                    None => eprintln!("no generator to write: N = {} is exhausted", cert.n),
                }
            }
            report
        }
        Command::Check { matrix } => commands::run_check(matrix, cli.format)?,
        Command::Certify { cert } => commands::run_certify(cert, cli.format)?,
    };
    emit(cli, &report)?;
    Ok(report.exit)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let exit = run(&cli).unwrap_or_else(|e| {
        eprintln!("mincodes: {e}");
        e.exit()
    });
    ExitCode::from(exit as u8)
}
