mod args;
mod classify;
mod eval;
mod figure;
mod fuzz;
mod manifest;
mod output;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};

/// Worker threads for fuzz campaigns and roof restarts.
const WORKERS_ENV: &str = "MONOGAMY_WORKERS";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Clean,
    Violation,
}

fn configure_workers() -> anyhow::Result<()> {
    let Ok(raw) = std::env::var(WORKERS_ENV) else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .map_err(|_| anyhow::anyhow!("{WORKERS_ENV}={raw:?} is not a thread count"))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()?;
    Ok(())
}

fn run(cli: Cli) -> anyhow::Result<Verdict> {
    configure_workers()?;
    let manifest = manifest::RunManifest::capture(cli.stamp, cli.command.seed());
    match cli.command {
        Command::Eval(a) => eval::run(&a, &manifest),
        Command::Fuzz(a) => fuzz::run(&a, &manifest),
        Command::Figure(a) => figure::run(&a, &manifest),
        Command::Classify(a) => classify::run(&a, &manifest),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(Verdict::Clean) => ExitCode::SUCCESS,
        Ok(Verdict::Violation) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
