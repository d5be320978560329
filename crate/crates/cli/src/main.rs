//! `nuca`: command-line front end for nuca-core.

mod args;
mod commands;
mod context;

use std::io::Write;
use std::path::Path;
use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;

use args::Cli;
use context::{quote, CliError, Ctx, EXIT_OK, EXIT_USAGE};

fn write_atomic(path: &Path, text: &str) -> Result<(), CliError> {
    let io = |e: std::io::Error| CliError::Io(format!("{}: {e}", path.display()));
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
    tmp.write_all(text.as_bytes()).map_err(io)?;
    tmp.as_file().sync_all().map_err(io)?;
    tmp.persist(path).map_err(|e| io(e.error))?;
    Ok(())
}

fn run(cli: Cli) -> Result<u8, CliError> {
    if let Some(n) = cli.global.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Usage(format!("--threads: {e}")))?;
    }
    let echo: Vec<String> = std::iter::once("nuca".to_string())
        .chain(std::env::args().skip(1).map(|a| quote(&a)))
        .collect();
    let ctx = Ctx::new(&cli.global, echo.join(" "));
    let start = Instant::now();
    let mut outcome = commands::dispatch(&cli.command, &ctx)?;
    if !cli.global.no_timing {
        outcome.report.timing("elapsed_ms", start.elapsed().as_millis());
    }
    let text = outcome.report.render();
    match &cli.global.out {
        Some(path) => {
            write_atomic(path, &text)?;
            eprintln!("{} (report written to {})", outcome.summary, path.display());
        }
        None => {
            print!("{text}");
            eprintln!("{}", outcome.summary);
        }
    }
    Ok(outcome.status.exit_code())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { EXIT_OK });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
