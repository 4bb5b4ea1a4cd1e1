//! Command-line front end: JSON run configs, presets, and the
//! `settle-bound`, `check`, `simulate` and `hopfield-demo` commands.

mod commands;
mod config;
mod report;

use std::path::PathBuf;

use clap::{Parser, Subcommand};

pub use commands::{cmd_check, cmd_hopfield_demo, cmd_settle_bound, cmd_simulate, hopfield_spec_of};
pub use config::{
    sign_field, LyapunovConfig, LyapunovKind, Preset, ResolvedSystem, RunConfig, SystemConfig,
};
pub use report::{ExitStatus, Report, TrajectoryRecord};

use crate::certifier::Mode;
use crate::error::Error;
use crate::integrator::SelectionStrategy;

/// Finite-time stability certificates, checks and simulations.
///
/// Prints a JSON report on stdout. Exit codes: 0 pass, 2 config error,
/// 3 unbounded certificate (with --require-finite), 4 condition violation,
/// 5 numeric failure.
#[derive(Debug, Parser)]
#[command(name = "fts", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// JSON run config; defaults to the `hopfield-ref-1` preset.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Directory for trajectory CSVs.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Multiplies shells and directions of the check grid.
    #[arg(long, global = true)]
    pub grid_density: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Settling-time certificate for v0 or V(t0, x0).
    SettleBound {
        /// Exit 3 when some certificate is unbounded.
        #[arg(long)]
        require_finite: bool,
    },
    /// Grid check of the decrease condition.
    Check {
        #[arg(long, default_value = "strong")]
        mode: Mode,
    },
    /// Trajectories with CSV output and settling verdicts.
    Simulate {
        /// steepest | continuity | fixed:<i> | random:<seed>
        #[arg(long)]
        selection: Option<SelectionStrategy>,
    },
    /// End-to-end run on a Hopfield network.
    HopfieldDemo {
        /// Overrides the spec's delta (validated at build time).
        #[arg(long)]
        delta: Option<f64>,
        /// Single initial state, e.g. `--x0 0.01 -0.005`.
        #[arg(long, num_args = 1.., allow_negative_numbers = true)]
        x0: Option<Vec<f64>>,
    },
}

impl Cli {
    /// The effective config: the file (or default) with flags applied, so
    /// the echoed config reproduces the run.
    pub fn effective_config(&self) -> crate::Result<RunConfig> {
        let mut cfg = match &self.config {
            Some(path) => RunConfig::load(path)?,
            None => RunConfig::default(),
        };
        if let Some(seed) = self.seed {
            cfg.seed = seed;
        }
        if let Some(k) = self.grid_density {
            cfg.grid_density = Some(k);
        }
        match &self.command {
            Command::Simulate { selection: Some(s) } => cfg.selections = vec![*s],
            Command::HopfieldDemo { delta, x0 } => {
                if let Some(d) = delta {
                    let mut spec = hopfield_spec_of(&cfg)
                        .ok_or_else(|| Error::Config("--delta needs a hopfield system".into()))?;
                    spec.delta = *d;
                    cfg.system = SystemConfig::Hopfield { hopfield: spec };
                }
                if let Some(x) = x0 {
                    cfg.initial = vec![x.clone()];
                }
            }
            _ => {}
        }
        Ok(cfg)
    }
}

/// Runs one command; never panics on bad input, errors land in the report.
pub fn run(cli: &Cli) -> Report {
    let cfg = match cli.effective_config() {
        Ok(cfg) => cfg,
        Err(e) => {
            let mut r = Report::new(command_name(&cli.command), &RunConfig::default());
            r.fail(&e);
            return r;
        }
    };
    let out = cli.out.as_deref();
    match &cli.command {
        Command::SettleBound { require_finite } => cmd_settle_bound(&cfg, *require_finite),
        Command::Check { mode } => cmd_check(&cfg, *mode),
        Command::Simulate { .. } => cmd_simulate(&cfg, out),
        Command::HopfieldDemo { .. } => cmd_hopfield_demo(&cfg, out),
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::SettleBound { .. } => "settle-bound",
        Command::Check { .. } => "check",
        Command::Simulate { .. } => "simulate",
        Command::HopfieldDemo { .. } => "hopfield-demo",
    }
}
