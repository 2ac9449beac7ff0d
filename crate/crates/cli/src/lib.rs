//! Command-line front end for `weightsys-core`.

pub mod commands;
pub mod error;
pub mod io;
pub mod tables;

use std::io::Write;

use clap::Parser;

pub use commands::Command;
pub use error::CliError;
pub use io::Format;

#[derive(Parser, Debug)]
#[command(name = "weightsys", version, about = "Weight systems, graph 4-invariants and delta-matroids")]
pub struct Cli {
    /// Output format; each command has its own default
    #[arg(long, global = true)]
    pub format: Option<Format>,
    /// Worker threads (overrides WEIGHTSYS_THREADS)
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

/// Thread count from the flag, then the environment; `None` means all cores.
pub fn thread_count(flag: Option<usize>) -> Result<Option<usize>, CliError> {
    let n = match flag {
        Some(n) => Some(n),
        None => match std::env::var("WEIGHTSYS_THREADS") {
            Ok(s) if !s.trim().is_empty() => Some(
                s.trim()
                    .parse::<usize>()
                    .map_err(|_| CliError::Usage(format!("WEIGHTSYS_THREADS={s} is not a count")))?,
            ),
            _ => None,
        },
    };
    match n {
        Some(0) => Err(CliError::Usage("thread count must be positive".into())),
        n => Ok(n),
    }
}

pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<(), CliError> {
    if let Some(n) = thread_count(cli.threads)? {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Usage(format!("cannot size the thread pool: {e}")))?;
    }
    commands::run(&cli.command, cli.format, out)
}
