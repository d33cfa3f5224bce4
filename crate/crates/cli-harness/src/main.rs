use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use cli_harness::commands::{self, Output};
use cli_harness::{CliError, Overrides, RunConfig};

/// Exclusion process generating functions, rate functions, simulation and validation.
#[derive(Parser)]
#[command(name = "sep", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    overrides: Overrides,
}

#[derive(Subcommand, Clone, Copy)]
enum Command {
    /// Generating function <e^{lambda N(x,t)}> over the x, t and lambda grids (CSV).
    Gf,
    /// Moments of N(x,t) up to --order (CSV).
    Moments,
    /// Cumulants of N(x,t) up to --order (CSV).
    Cumulants,
    /// phi(xi) with the symmetry residual, and C(s) (CSV).
    RateFn,
    /// Asymptotic tracer velocity (JSON).
    Xi0,
    /// CDF of the tagged particle X_0(t) on the x grid (CSV).
    TaggedDist,
    /// Monte Carlo estimates with a formula cross-check (JSON).
    Simulate,
    /// ASEP tau-moments, evolution residuals and the symmetric limit (JSON).
    DualityCheck,
    /// Run the acceptance suite and emit a manifest (JSON); exit 1 on any failure.
    Validate,
}

fn run(cmd: Command, c: &RunConfig) -> Result<Output, CliError> {
    match cmd {
        Command::Gf => commands::gf(c),
        Command::Moments => commands::moments(c),
        Command::Cumulants => commands::cumulants(c),
        Command::RateFn => commands::rate_fn(c),
        Command::Xi0 => commands::xi0(c),
        Command::TaggedDist => commands::tagged_dist(c),
        Command::Simulate => commands::simulate(c),
        Command::DualityCheck => commands::duality_check(c),
        Command::Validate => commands::validate(c),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = RunConfig::resolve(&cli.overrides).and_then(|c| {
        if let Some(w) = c.worker_count()? {
            rayon::ThreadPoolBuilder::new().num_threads(w).build_global().map_err(CliError::compute)?;
        }
        let out = run(cli.command, &c)?;
        match &c.output {
            Some(p) => std::fs::write(p, &out.body)?,
            None => std::io::stdout().lock().write_all(out.body.as_bytes())?,
        }
        Ok(out.ok)
    });
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("sep: {e}");
            ExitCode::from(2)
        }
    }
}
