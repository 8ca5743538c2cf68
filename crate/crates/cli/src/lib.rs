//! Command-line front end. [`run`] is the whole program minus process exit,
//! so integration tests can drive it in-process.

// `!(x > 0.0)` style guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod args;
pub mod commands;
pub mod config;
pub mod error;
pub mod output;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::Parser;

pub use config::{load_config, RunConfig};
pub use error::{CliError, Result};

use args::{Cli, Command};

/// Parsed global state shared by every subcommand.
pub struct Context {
    /// Arguments after the program name, recorded in manifests.
    pub argv: Vec<String>,
    pub config: Option<RunConfig>,
    pub config_path: Option<PathBuf>,
}

/// Runs one command line and returns the process exit code:
/// 0 success, 1 I/O failure, 2 usage or validation error, 3 numeric failure.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match execute(cli, &argv) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn execute(cli: Cli, argv: &[OsString]) -> Result<()> {
    if let Some(n) = cli.threads {
        if n == 0 {
            return Err(CliError::Config("--threads must be at least 1".into()));
        }
        // a second call in the same process keeps the first pool
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            log::debug!("thread pool already initialized: {e}");
        }
    }
    let config = cli.config.as_deref().map(load_config).transpose()?;
    let ctx = Context {
        argv: argv.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect(),
        config,
        config_path: cli.config.clone(),
    };
    match cli.command {
        Command::Constants(a) => commands::constants(&ctx, a),
        Command::Spectrum(a) => commands::spectrum(&ctx, a),
        Command::Oracle(a) => commands::oracle(&ctx, a),
        Command::Clock(a) => commands::clock(&ctx, a),
        Command::Scatter(a) => commands::scatter(&ctx, a),
        Command::Gpe(a) => commands::gpe(&ctx, a),
        Command::Figures(a) => commands::figures(&ctx, a),
    }
}
