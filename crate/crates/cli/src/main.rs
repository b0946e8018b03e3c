//! `rmf`: command-line driver for fundamental modules, normalized R-matrices, denominators,
//! bracket checks and Schur–Weyl quivers.
//!
//! Exit codes: 0 when every check passes, 1 on a verification mismatch or runtime error,
//! 2 on a usage or configuration error.

mod cache;
mod job;
mod run;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use cache::{write_atomic, Cache};
use job::{Cli, JobSpec};
use run::{run, Failure, Outcome};

fn emit(job: &JobSpec, outcome: &Outcome) -> std::io::Result<()> {
    let mut text = String::new();
    for line in &outcome.lines {
        text.push_str(&line.to_string());
        text.push('\n');
    }
    match &job.out {
        Some(path) => {
            let dir = match path.parent() {
                Some(p) if !p.as_os_str().is_empty() => p.to_path_buf(),
                _ => std::path::PathBuf::from("."),
            };
            std::fs::create_dir_all(&dir)?;
            write_atomic(&dir, path, text.as_bytes())
        }
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let job = match JobSpec::from_cli(cli) {
        Ok(j) => j,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    let cache = match Cache::new(job.cache.clone()) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: cache directory: {e}");
            return ExitCode::from(2);
        }
    };
    match run(&job, &cache) {
        Ok(outcome) => {
            if let Err(e) = emit(&job, &outcome) {
                eprintln!("error: writing report: {e}");
                return ExitCode::from(1);
            }
            if outcome.pass {
                ExitCode::SUCCESS
            } else {
                eprintln!("verification mismatch");
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
