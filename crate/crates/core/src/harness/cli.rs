//! Command-line front end. Exit codes: 0 success, 1 failed verification,
//! 2 invalid input, 3 I/O, 4 oracle non-convergence.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use super::config::{PartialConfig, RunConfig};
use super::{default_report_specs, field, report, run_scenario, sweep, write_report};
use crate::error::{Error, Result};

#[derive(Debug, Parser)]
#[command(name = "usage-pricing", version, about = "Equilibria of usage-based ISP/CP pricing games")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve a scenario and print its equilibria.
    #[command(allow_negative_numbers = true)]
    Solve(Flags),
    /// Solve a scenario over a parameter range and write CSV.
    #[command(allow_negative_numbers = true)]
    Sweep(Flags),
    /// Write the revenue gradient field of the split-coefficient coalition.
    #[command(allow_negative_numbers = true)]
    Field(Flags),
    /// Solve and epsilon-Nash-check; exits 1 if any outcome fails.
    #[command(allow_negative_numbers = true)]
    Verify(Flags),
    /// Compare printed reference values with the numeric oracle.
    #[command(allow_negative_numbers = true)]
    Report(Flags),
}

#[derive(Debug, Default, Args)]
pub struct Flags {
    /// TOML file with any of the keys below; flags override it.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub scenario: Option<String>,
    #[arg(long)]
    pub d0: Option<f64>,
    #[arg(long)]
    pub d: Option<f64>,
    #[arg(long)]
    pub ps: Option<f64>,
    #[arg(long)]
    pub pa: Option<f64>,
    #[arg(long)]
    pub gamma: Option<f64>,
    #[arg(long)]
    pub dl: Option<f64>,
    #[arg(long)]
    pub dh: Option<f64>,
    #[arg(long)]
    pub d2: Option<f64>,
    /// reciprocal or slackness
    #[arg(long)]
    pub stickiness: Option<String>,
    /// isp or cp
    #[arg(long)]
    pub leader: Option<String>,
    /// param:start:stop:step, param one of d0 d ps pa gamma dl dh d2 eta
    #[arg(long)]
    pub sweep: Option<String>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub verify: bool,
    /// Nash tolerance in units of Umax (default 1e-6)
    #[arg(long)]
    pub epsilon: Option<f64>,
    /// Grid points per price in deviation scans (default 2001)
    #[arg(long)]
    pub grid: Option<usize>,
    /// Field region x0:x1:y0:y1 in the (pl, p2) plane
    #[arg(long)]
    pub region: Option<String>,
    /// Field resolution nx:ny (default 21:21)
    #[arg(long)]
    pub resolution: Option<String>,
}

impl Flags {
    fn partial(&self) -> Result<PartialConfig> {
        Ok(PartialConfig {
            scenario: self.scenario.as_deref().map(str::parse).transpose()?,
            d0: self.d0,
            d: self.d,
            ps: self.ps,
            pa: self.pa,
            gamma: self.gamma,
            dl: self.dl,
            dh: self.dh,
            d2: self.d2,
            stickiness: self.stickiness.as_deref().map(str::parse).transpose()?,
            leader: self.leader.as_deref().map(str::parse).transpose()?,
            sweep: self.sweep.clone(),
            out: self.out.clone(),
            verify: self.verify.then_some(true),
            epsilon: self.epsilon,
            grid: self.grid,
            region: self.region.clone(),
            resolution: self.resolution.clone(),
        })
    }

    /// Config file overlaid with the flags.
    pub fn resolve(&self) -> Result<RunConfig> {
        let file = match &self.config {
            Some(path) => PartialConfig::load(path)?,
            None => PartialConfig::default(),
        };
        RunConfig::from_partial(file.overlay(self.partial()?))
    }
}

pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Io(_) | Error::Csv(_) | Error::Json(_) => 3,
        Error::Divergence { .. } => 4,
        _ => 2,
    }
}

fn with_output(path: Option<&Path>, write: impl FnOnce(&mut dyn Write) -> Result<()>) -> Result<()> {
    match path {
        Some(p) => {
            let mut f = BufWriter::new(File::create(p)?);
            write(&mut f)?;
            f.flush()?;
            Ok(())
        }
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            write(&mut lock)
        }
    }
}

/// Runs one parsed command, returning the process exit code.
pub fn execute(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Solve(flags) => solve_cmd(flags.resolve()?),
        Command::Verify(flags) => {
            let mut config = flags.resolve()?;
            config.verify = true;
            solve_cmd(config)
        }
        Command::Sweep(flags) => {
            let config = flags.resolve()?;
            let table = sweep(&config)?;
            with_output(config.out.as_deref(), |w| table.write(w))?;
            Ok(0)
        }
        Command::Field(flags) => {
            let config = flags.resolve()?;
            let table = field(&config)?;
            with_output(config.out.as_deref(), |w| table.write(w))?;
            Ok(0)
        }
        Command::Report(flags) => {
            let config = flags.resolve()?;
            let specs = match config.scenario {
                Some(_) => vec![config.spec()?],
                None => default_report_specs(),
            };
            let rows = report(&specs)?;
            let meta = format!("usage-pricing {} report", env!("CARGO_PKG_VERSION"));
            with_output(config.out.as_deref(), |w| write_report(w, &meta, &rows))?;
            Ok(0)
        }
    }
}

fn solve_cmd(config: RunConfig) -> Result<i32> {
    let record = run_scenario(&config)?;
    print!("{}", record.summary());
    if let Some(path) = &config.out {
        let mut f = BufWriter::new(File::create(path)?);
        serde_json::to_writer_pretty(&mut f, &record)?;
        f.flush()?;
    }
    Ok(if record.passed() { 0 } else { 1 })
}

/// Parses `args` and runs, printing errors to stderr.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}
