//! `cmkit`: command-line surface over the cmkit library.

mod args;
mod commands;
mod report;

use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;
use serde_json::json;

use args::{Cli, OutputFormat};
use commands::{CliError, Context};
use report::{Report, Status, Timing};

/// Sizes the global thread pool from `CMKIT_THREADS`; returns a warning if the value is unusable.
fn configure_threads() -> Option<String> {
    let value = std::env::var("CMKIT_THREADS").ok()?;
    let warning = match value.parse::<usize>() {
        Ok(n) if n > 0 => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .err()
            .map(|e| format!("could not size the thread pool: {e}")),
        _ => Some(format!("ignoring CMKIT_THREADS={value:?}: expected a positive integer")),
    };
    if let Some(w) = &warning {
        log::warn!("{w}");
    }
    warning
}

fn command_name(cli: &Cli) -> String {
    let args: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    match &cli.command {
        args::Command::Poset(_) | args::Command::Equivariant(_) => {
            args.iter().take(2).cloned().collect::<Vec<_>>().join(" ")
        }
        _ => args.first().cloned().unwrap_or_default(),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let thread_warning = configure_threads();
    let start = Instant::now();
    let mut ctx = Context {
        seed: cli.seed,
        warnings: thread_warning.into_iter().collect(),
        ..Context::default()
    };
    let outcome = commands::run(&cli.command, &mut ctx);
    let (status, results) = match outcome {
        Ok(results) => (Status::Ok, results),
        Err(CliError::Validation(message)) => (Status::ValidationError, json!({ "error": message })),
        Err(CliError::Precondition { message, details }) => (
            Status::PreconditionFailed,
            json!({ "error": message, "details": details }),
        ),
    };
    let report = Report {
        command: command_name(&cli),
        input_digest: report::digest(&ctx.inputs),
        status,
        results,
        warnings: ctx.warnings,
        timing: Timing {
            elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
        },
    };
    let text = match cli.output {
        OutputFormat::Json => serde_json::to_string_pretty(&report).expect("report serializes") + "\n",
        OutputFormat::Table => report::render_table(&report),
    };
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
    if status != Status::Ok {
        eprintln!("cmkit: {}", report.results["error"].as_str().unwrap_or("failed"));
    }
    ExitCode::from(status.exit_code() as u8)
}
