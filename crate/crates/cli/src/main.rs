use std::io::Write;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use quartic::pipeline::{Timings, DEFAULT_SLACK};
use quartic::table::{self, CountTable};
use quartic::verify::{verify, DEFAULT_MAX_EDGES};

/// Exact counts of 4-regular planar graphs and maps.
#[derive(Debug, Parser)]
#[command(name = "quartic", version)]
struct Cli {
    /// Largest vertex count for the graph and simple-map tables.
    #[arg(long, global = true, default_value_t = 16)]
    max_n: u32,
    /// Largest total degree k + l for the 3-connected map table.
    #[arg(long, global = true, default_value_t = 16)]
    max_degree: u32,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Extra quadrangulation degrees solved beyond the requested size.
    #[arg(long, global = true, default_value_t = DEFAULT_SLACK)]
    trunc_slack: u32,
    /// Print per-stage timings to stderr.
    #[arg(long, global = true)]
    profile: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Labelled 4-regular planar graphs: all, connected, 3-connected.
    Graphs,
    /// Rooted 3-connected 4-regular maps by simple and double edges.
    Maps3c,
    /// Rooted simple 4-regular maps and their 3-connected part.
    SimpleMaps,
    /// Cross-check the pipeline against brute force and its own identities.
    Verify {
        /// Largest edge count in the rooted-map census.
        #[arg(long, default_value_t = DEFAULT_MAX_EDGES)]
        max_edges: usize,
    },
}

fn render(table: &CountTable, format: Format) -> String {
    match format {
        Format::Csv => table.to_csv(),
        Format::Json => {
            let mut s = table.to_json();
            s.push('\n');
            s
        }
    }
}

fn report_timings(timings: &Timings) {
    for (stage, elapsed) in &timings.stages {
        eprintln!("{stage}: {:.3} s", elapsed.as_secs_f64());
    }
}

fn run(cli: &Cli, timings: &mut Timings) -> Result<bool> {
    let slack = cli.trunc_slack;
    let table = match &cli.command {
        Command::Graphs => table::graphs(cli.max_n, slack, timings).context("graphs")?,
        Command::Maps3c => table::maps3c(cli.max_degree, slack, timings).context("maps3c")?,
        Command::SimpleMaps => {
            table::simple_maps(cli.max_n, slack, timings).context("simple-maps")?
        }
        Command::Verify { max_edges } => {
            let checks = verify(*max_edges, slack, timings).context("verify")?;
            let mut out = std::io::stdout().lock();
            for check in &checks {
                let status = if check.passed { "PASS" } else { "FAIL" };
                writeln!(out, "{status} {}: {}", check.name, check.detail)?;
            }
            let failed = checks.iter().filter(|c| !c.passed).count();
            writeln!(out, "{} checks, {failed} failed", checks.len())?;
            return Ok(failed == 0);
        }
    };
    std::io::stdout()
        .lock()
        .write_all(render(&table, cli.format).as_bytes())?;
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut timings = Timings::default();
    let outcome = run(&cli, &mut timings);
    if cli.profile {
        report_timings(&timings);
    }
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
