//! The `coauthnet` command-line pipeline: ingest bibliographic exports,
//! build co-occurrence networks, analyze them, rank nodes and report.
//!
//! Every stage reads its inputs from and writes its outputs to one output
//! directory, which also holds `manifest.json`.

pub mod config;
pub mod manifest;
pub mod output;
pub mod pipeline;
pub mod report;

use std::io;
use std::path::{Path, PathBuf};

use thiserror::Error;

pub use config::{ConfigError, ConfigLayer, RunConfig};

pub const EXIT_IO: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_CONFIG: i32 = 3;
pub const EXIT_NOT_CONVERGED: i32 = 4;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config: {0}")]
    Config(#[from] ConfigError),
    #[error("{stage}: {message}")]
    Input {
        stage: &'static str,
        message: String,
    },
    #[error("{stage}: {message}")]
    NotConverged {
        stage: &'static str,
        message: String,
    },
    #[error("{stage}: {}: {source}", path.display())]
    Io {
        stage: &'static str,
        path: PathBuf,
        source: io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => EXIT_CONFIG,
            CliError::Input { .. } => EXIT_INPUT,
            CliError::NotConverged { .. } => EXIT_NOT_CONVERGED,
            CliError::Io { .. } => EXIT_IO,
        }
    }

    pub(crate) fn input(stage: &'static str, message: impl Into<String>) -> Self {
        CliError::Input {
            stage,
            message: message.into(),
        }
    }

    pub(crate) fn io(stage: &'static str, path: &Path) -> impl FnOnce(io::Error) -> CliError {
        let path = path.to_path_buf();
        move |source| CliError::Io {
            stage,
            path,
            source,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Ingest,
    Build,
    Analyze,
    Rank,
    Report,
    /// All five stages in order.
    Run,
}

/// Runs `command` under the output-directory lock, on a worker pool of
/// `config.threads` threads when that is nonzero.
pub fn execute(command: Command, config: &RunConfig) -> Result<(), CliError> {
    let _lock = output::DirLock::acquire(&config.out).map_err(CliError::io("lock", &config.out))?;
    let go = || match command {
        Command::Ingest => pipeline::ingest(config),
        Command::Build => pipeline::build(config),
        Command::Analyze => pipeline::analyze(config),
        Command::Rank => pipeline::rank(config),
        Command::Report => report::report(config),
        Command::Run => {
            pipeline::ingest(config)?;
            pipeline::build(config)?;
            pipeline::analyze(config)?;
            pipeline::rank(config)?;
            report::report(config)
        }
    };
    if config.threads > 0 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(config.threads)
            .build()
            .map_err(|e| CliError::Config(ConfigError::Invalid(format!("threads: {e}"))))?;
        pool.install(go)
    } else {
        go()
    }
}
