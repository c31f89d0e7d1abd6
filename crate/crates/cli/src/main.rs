mod args;
mod commands;
mod io;

use std::process::ExitCode;

use clap::Parser;

use args::Cli;
use commands::Context;
use io::{CliError, CliResult, Config, Sink};

fn execute(cli: &Cli) -> CliResult<()> {
    let cfg = Config::load(cli.config.as_deref())?;
    let threads = cli.threads.or(cfg.threads);
    if threads == Some(0) {
        return Err(CliError::Validation("--threads must be at least 1".into()));
    }
    let ctx = Context::new(cli, &cfg);
    let mut sink = Sink::new(cli.out.clone());
    in_pool(threads, || commands::run(cli, &ctx, &mut sink))?;
    sink.finish()
}

#[cfg(feature = "parallel")]
fn in_pool<R: Send>(threads: Option<usize>, f: impl FnOnce() -> CliResult<R> + Send) -> CliResult<R> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads {
        builder = builder.num_threads(n);
    }
    let pool = builder.build().map_err(|e| CliError::Internal(e.to_string()))?;
    pool.install(f)
}

#[cfg(not(feature = "parallel"))]
fn in_pool<R: Send>(_threads: Option<usize>, f: impl FnOnce() -> CliResult<R> + Send) -> CliResult<R> {
    f()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("bcoh: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
