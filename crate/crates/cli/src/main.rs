use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use coauthnet_cli::{execute, CliError, Command, ConfigError, ConfigLayer, RunConfig, EXIT_CONFIG};

#[derive(Debug, Parser)]
#[command(
    name = "coauthnet",
    version,
    about = "Co-occurrence network analysis of bibliographic exports"
)]
struct Cli {
    #[command(subcommand)]
    command: Sub,
    #[command(flatten)]
    flags: Flags,
}

#[derive(Debug, Subcommand)]
enum Sub {
    /// Parse and filter the input exports into records.tsv.
    Ingest,
    /// Build a network per entity kind from records.tsv.
    Build,
    /// Centralities, clustering and communities.
    Analyze,
    /// TOPSIS ranking of the analyzed networks.
    Rank,
    /// Write report.md from the other outputs.
    Report,
    /// Every stage in order.
    Run,
}

/// Flags override values from `--config`.
#[derive(Debug, Args)]
struct Flags {
    /// key=value configuration file.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    out: Option<String>,
    /// Input export; repeat for several files.
    #[arg(long = "input", global = true)]
    inputs: Vec<String>,
    /// wos or canonical.
    #[arg(long, global = true)]
    format: Option<String>,
    #[arg(long, global = true)]
    seed: Option<String>,
    #[arg(long, global = true)]
    threads: Option<String>,
    #[arg(long = "top-k", global = true)]
    top_k: Option<String>,
    /// Comma-separated criterion weights.
    #[arg(long, global = true)]
    weights: Option<String>,
    /// Criteria to rank by, comma-separated.
    #[arg(long, global = true)]
    criteria: Option<String>,
    /// benefit or cost per criterion, comma-separated.
    #[arg(long, global = true)]
    directions: Option<String>,
    /// paper, pairs or none.
    #[arg(long = "betweenness-norm", global = true)]
    betweenness_norm: Option<String>,
    /// component or harmonic.
    #[arg(long, global = true)]
    closeness: Option<String>,
    /// binary or weighted.
    #[arg(long, global = true)]
    eigen: Option<String>,
    /// author, institution, country or keyword; repeatable or comma-separated.
    #[arg(long = "kind", global = true)]
    kinds: Vec<String>,
    #[arg(long = "year-min", global = true)]
    year_min: Option<String>,
    #[arg(long = "year-max", global = true)]
    year_max: Option<String>,
    /// `all` or a comma-separated list of document types.
    #[arg(long = "doc-types", global = true)]
    doc_types: Option<String>,
    #[arg(long, global = true)]
    resolution: Option<String>,
}

impl Flags {
    fn layer(&self) -> Result<ConfigLayer, ConfigError> {
        let mut layer = ConfigLayer::default();
        let mut pairs: Vec<(&str, String)> = Vec::new();
        for input in &self.inputs {
            pairs.push(("input", input.clone()));
        }
        if !self.kinds.is_empty() {
            pairs.push(("kinds", self.kinds.join(",")));
        }
        let single = [
            ("out", &self.out),
            ("format", &self.format),
            ("seed", &self.seed),
            ("threads", &self.threads),
            ("top_k", &self.top_k),
            ("weights", &self.weights),
            ("criteria", &self.criteria),
            ("directions", &self.directions),
            ("betweenness_norm", &self.betweenness_norm),
            ("closeness", &self.closeness),
            ("eigen", &self.eigen),
            ("year_min", &self.year_min),
            ("year_max", &self.year_max),
            ("doc_types", &self.doc_types),
            ("resolution", &self.resolution),
        ];
        for (key, value) in single {
            if let Some(v) = value {
                pairs.push((key, v.clone()));
            }
        }
        for (key, value) in pairs {
            layer
                .set(key, &value, Path::new(""))
                .map_err(|m| ConfigError::Invalid(format!("--{}: {m}", key.replace('_', "-"))))?;
        }
        Ok(layer)
    }
}

fn config(flags: &Flags) -> Result<RunConfig, CliError> {
    let file_layer = match &flags.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| {
                ConfigError::Invalid(format!("cannot read {}: {e}", path.display()))
            })?;
            let base = path.parent().unwrap_or(Path::new(""));
            ConfigLayer::parse(&text, &path.display().to_string(), base)?
        }
        None => ConfigLayer::default(),
    };
    Ok(RunConfig::from_layer(file_layer.overlay(flags.layer()?))?)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_CONFIG as u8)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let command = match cli.command {
        Sub::Ingest => Command::Ingest,
        Sub::Build => Command::Build,
        Sub::Analyze => Command::Analyze,
        Sub::Rank => Command::Rank,
        Sub::Report => Command::Report,
        Sub::Run => Command::Run,
    };
    let result = config(&cli.flags).and_then(|cfg| execute(command, &cfg));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
