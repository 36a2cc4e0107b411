mod args;
mod commands;
mod output;
mod verify;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};
use output::Rendered;

/// Any error that stops a command before it produces a result. All of them
/// exit with status 2.
#[derive(Debug)]
pub struct CliError(pub String);

impl<E: std::fmt::Display> From<E> for CliError {
    fn from(e: E) -> Self {
        CliError(e.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;

/// What a command produced and whether any check it ran failed.
pub struct Outcome {
    pub rendered: Rendered,
    pub failed: bool,
}

impl Outcome {
    pub fn ok(rendered: Rendered) -> Self {
        Self {
            rendered,
            failed: false,
        }
    }
}

fn run(cli: &Cli) -> CliResult<Outcome> {
    let format = cli.format;
    match &cli.command {
        Command::Basis(a) => commands::basis(a, format),
        Command::Transform(a) => commands::transform(a, format, cli.output.as_deref()),
        Command::Verify(a) => verify::run(a, format),
        Command::Expmap(a) => commands::expmap(a, format),
        Command::Rep(a) => commands::rep(a, format),
        Command::Dispersion(a) => commands::dispersion(a, format),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match run(&cli) {
        Ok(o) => o,
        Err(CliError(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    if let Err(e) = output::write(outcome.rendered, cli.output.as_deref()) {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    if outcome.failed {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}
