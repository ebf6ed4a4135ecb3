use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use hydro2d::sweep::{emit_table1, execute, parse_states, SweepConfig};
use hydro2d::{verify, Error, Result};

#[derive(Parser)]
#[command(version, about = "Information measures of the confined planar hydrogen atom")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sweep states over confinement radii and write CSV and plot data.
    Sweep {
        /// key = value configuration file; flags override its entries.
        #[arg(long)]
        config: Option<PathBuf>,
        /// States as n,m pairs, e.g. "1,0;2,0;2,1;3,2".
        #[arg(long)]
        states: Option<String>,
        #[arg(long)]
        r0_min: Option<f64>,
        #[arg(long)]
        r0_max: Option<f64>,
        #[arg(long)]
        points: Option<usize>,
        /// log or linear
        #[arg(long)]
        spacing: Option<String>,
        #[arg(long)]
        jobs: Option<usize>,
        /// Output directory.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write the free-atom table.
    Table1 {
        #[arg(long)]
        out: PathBuf,
    },
    /// Run the acceptance property suite.
    Verify,
}

fn sweep_config(command: Command) -> Result<SweepConfig> {
    let Command::Sweep { config, states, r0_min, r0_max, points, spacing, jobs, out } = command else {
        unreachable!("only called for sweep")
    };
    let mut cfg = match config {
        Some(path) => SweepConfig::from_file(&path)?,
        None => SweepConfig::default(),
    };
    if let Some(s) = states {
        cfg.states = parse_states(&s)?;
    }
    if let Some(v) = r0_min {
        cfg.r0_min = v;
    }
    if let Some(v) = r0_max {
        cfg.r0_max = v;
    }
    if let Some(v) = points {
        cfg.points = v;
    }
    if let Some(s) = spacing {
        cfg.set("spacing", &s)?;
    }
    if jobs.is_some() {
        cfg.jobs = jobs;
    }
    if let Some(dir) = out {
        cfg.output_path = dir;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        c @ Command::Sweep { .. } => {
            let cfg = sweep_config(c)?;
            let outcome = execute(&cfg)?;
            for (s, r0, e) in &outcome.failures {
                eprintln!("{s} at r0 = {r0}: {e}");
            }
            println!(
                "{} rows, {} failed; wrote {}",
                outcome.rows.len(),
                outcome.failures.len(),
                cfg.output_path.display()
            );
            Ok(if outcome.failures.is_empty() { ExitCode::SUCCESS } else { ExitCode::from(2) })
        }
        Command::Table1 { out } => {
            emit_table1(&out)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify => {
            let mut ok = true;
            for report in verify::run_all() {
                println!("{report}");
                ok &= report.passed;
            }
            Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(2) })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    e.exit_code() as u8
}
