//! The `pdem` command line.
//!
//! Exit codes: 0 on success, 1 when `verify` finds a failing check, 2 on a
//! bad configuration or an IO error.

pub mod commands;
pub mod config;
pub mod output;
pub mod verify;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::Result;
use config::{parse_complex, parse_profile, Format, RunConfig};
use verify::Fault;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Eigenfunctions and densities, one file per n.
    Eigen,
    /// Coherent-state densities and coefficients.
    Cs,
    /// Energy moments and uncertainties.
    Observables,
    /// Data for both figures plus a plotting script.
    Figures,
    /// Run the verification suite.
    Verify,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FaultArg {
    Spectrum,
}

#[derive(Debug, Parser)]
#[command(name = "pdem", version, about = "Coherent states of a position-dependent-mass oscillator")]
pub struct Args {
    #[command(subcommand)]
    pub command: Command,
    /// JSON configuration file.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Output directory.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Comma-separated complex labels, e.g. `0.5,1+0.5i`.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub alpha: Option<String>,
    /// Comma-separated times.
    #[arg(long, global = true, value_delimiter = ',', allow_hyphen_values = true)]
    pub t: Option<Vec<f64>>,
    /// Comma-separated eigenstate indices.
    #[arg(long, global = true, value_delimiter = ',')]
    pub n: Option<Vec<usize>>,
    /// Deformation profile, `name` or `name:p1,p2`.
    #[arg(long, global = true)]
    pub profile: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub lambda: Option<f64>,
    /// Coherent-state truncation tolerance.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    #[arg(long, global = true, hide = true, value_enum)]
    inject_fault: Option<FaultArg>,
}

impl Args {
    /// The configuration file (or defaults) with command-line overrides applied.
    pub fn resolve(&self) -> Result<RunConfig> {
        let mut c = match &self.config {
            Some(p) => RunConfig::load(p)?,
            None => RunConfig::default(),
        };
        if let Some(o) = &self.out {
            c.out = o.clone();
        }
        if let Some(f) = self.format {
            c.format = f;
        }
        if let Some(a) = &self.alpha {
            c.alpha = a.split(',').map(|s| s.trim().to_string()).collect();
            for s in &c.alpha {
                parse_complex(s)?;
            }
        }
        if let Some(t) = &self.t {
            c.t = t.clone();
        }
        if let Some(n) = &self.n {
            c.n = n.clone();
        }
        if let Some(p) = &self.profile {
            c.profile = parse_profile(p)?;
        }
        if let Some(l) = self.lambda {
            c.lambda = l;
        }
        if let Some(t) = self.tol {
            c.truncation.tol = t;
        }
        c.validate()?;
        Ok(c)
    }
}

/// Parse `argv`, run the command and return the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = match Args::try_parse_from(argv) {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match execute(&args) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    }
}

fn execute(args: &Args) -> Result<i32> {
    let config = args.resolve()?;
    let paths = match args.command {
        Command::Eigen => commands::cmd_eigen(&config)?,
        Command::Cs => commands::cmd_cs(&config)?,
        Command::Observables => commands::cmd_observables(&config)?,
        Command::Figures => commands::cmd_figures(&config)?,
        Command::Verify => {
            let fault = args.inject_fault.map(|FaultArg::Spectrum| Fault::Spectrum);
            let (report, path) = commands::cmd_verify(&config, fault)?;
            for c in &report.checks {
                println!("{} {} metric={:.3e} threshold={:.3e}", if c.pass { "PASS" } else { "FAIL" }, c.check_id, c.metric, c.threshold);
            }
            println!("{}", path.display());
            return Ok(if report.pass { EXIT_OK } else { EXIT_VERIFY_FAILED });
        }
    };
    for p in paths {
        println!("{}", p.display());
    }
    Ok(EXIT_OK)
}

/// Entry point for the binary.
pub fn main_from_env() -> i32 {
    run(std::env::args_os())
}

