//! Command-line front end: parses flags and an optional config file, runs
//! one subcommand and renders the report.

mod args;
mod commands;
mod config;
mod output;

use std::ffi::OsString;
use std::io::Write;

use clap::Parser;

pub use args::{Cli, Command, Format};
use commands::Common;
use config::Config;
use qvar::Execution;

/// Failure classes, each with its own exit code.
#[derive(Debug)]
pub enum CliError {
    /// Bad flags or configuration (exit 2).
    Usage(String),
    /// Library error (exit 1).
    Domain(qvar::Error),
    /// File system failure (exit 1).
    Io(String),
}

impl From<qvar::Error> for CliError {
    fn from(e: qvar::Error) -> Self {
        CliError::Domain(e)
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Domain(_) | CliError::Io(_) => 1,
        }
    }
}

/// Parse `argv`, run, write the report to `--out` or `stdout` and
/// diagnostics to `stderr`. Returns the process exit code.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(text.as_bytes())
            } else {
                stdout.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match execute(cli, stdout) {
        Ok(()) => 0,
        Err(e) => {
            let _ = match &e {
                CliError::Usage(m) => {
                    writeln!(stderr, "error: {m}\n\nFor more information, try '--help'.")
                }
                CliError::Domain(d) => writeln!(stderr, "error: {}: {d}", d.name()),
                CliError::Io(m) => writeln!(stderr, "error: Io: {m}"),
            };
            e.exit_code()
        }
    }
}

fn execute(cli: Cli, stdout: &mut dyn Write) -> Result<(), CliError> {
    let name = cli.command.name();
    let cfg = match &cli.config {
        Some(path) => Config::load(path, name)?,
        None => Config::default(),
    };
    let common = Common {
        seed: cfg.pick(cli.seed, "seed")?,
        n: cfg.pick(cli.n, "n")?,
        exec: if cfg.switch(cli.sequential, "sequential")? {
            Execution::Sequential
        } else {
            Execution::Parallel
        },
    };
    let format = cfg.pick(cli.format, "format")?.unwrap_or(Format::Json);
    let out: Option<std::path::PathBuf> = cfg.pick(cli.out, "out")?;

    let report = match cli.command {
        Command::Spin(a) => commands::spin(a, &cfg, &common)?,
        Command::Born(a) => commands::born(a, &cfg, &common)?,
        Command::Chsh(a) => commands::chsh(a, &cfg, &common)?,
        Command::Medical(a) => commands::medical(a, &cfg, &common)?,
        Command::Measure(a) => commands::measure(a, &cfg, &common)?,
        Command::Inference(a) => commands::inference(a, &cfg, &common)?,
        Command::Groups(a) => commands::groups(a, &cfg)?,
    };
    let text = report.render(format, name)?;
    match out {
        Some(path) => std::fs::write(&path, text)
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display()))),
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Io(e.to_string())),
    }
}
