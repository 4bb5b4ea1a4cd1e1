use std::collections::BTreeMap;

use serde::Serialize;

use super::config::RunConfig;
use crate::certifier::CheckReport;
use crate::comparison::SettlingCertificate;
use crate::error::Error;
use crate::hopfield::DemoReport;
use crate::integrator::{SelectionStrategy, SettlingVerdict};

/// Process exit status. The codes are disjoint:
/// `0` pass, `2` config error, `3` unbounded certificate (with
/// `--require-finite`), `4` condition violation, `5` numeric failure.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ExitStatus {
    Pass,
    ConfigError,
    Unbounded,
    Violation,
    NumericFailure,
}

impl ExitStatus {
    pub fn code(self) -> i32 {
        match self {
            Self::Pass => 0,
            Self::ConfigError => 2,
            Self::Unbounded => 3,
            Self::Violation => 4,
            Self::NumericFailure => 5,
        }
    }

    pub fn for_error(e: &Error) -> Self {
        match e {
            Error::InvalidFunction(_)
            | Error::MalformedSamples(_)
            | Error::InvalidSet(_)
            | Error::DimensionOverflow { .. }
            | Error::DimensionMismatch { .. }
            | Error::MissingLipschitz
            | Error::Config(_)
            | Error::Io(_) => Self::ConfigError,
            Error::UnboundedCertificate => Self::Unbounded,
            Error::AssumptionViolation { .. } | Error::Unsettled | Error::NoBasin(_) => Self::Violation,
            Error::DivergentIntegral { .. }
            | Error::EvaluationDomain { .. }
            | Error::BlowUp { .. }
            | Error::StepStall { .. }
            | Error::Csv(_) => Self::NumericFailure,
        }
    }

    /// The more severe of two statuses.
    pub fn worst(self, other: Self) -> Self {
        let rank = |s: Self| match s {
            Self::Pass => 0,
            Self::Unbounded => 1,
            Self::Violation => 2,
            Self::NumericFailure => 3,
            Self::ConfigError => 4,
        };
        if rank(other) > rank(self) {
            other
        } else {
            self
        }
    }
}

/// Outcome of one integrated trajectory.
#[derive(Clone, Debug, Serialize)]
pub struct TrajectoryRecord {
    pub initial_index: usize,
    pub x0: Vec<f64>,
    pub strategy: SelectionStrategy,
    pub settled_at: Option<f64>,
    pub samples: usize,
    pub csv: Option<String>,
    pub verdict: Option<SettlingVerdict>,
    pub note: Option<String>,
}

/// Machine-readable result of one command.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub config: RunConfig,
    pub config_hash: String,
    pub status: ExitStatus,
    pub exit_code: i32,
    pub certificates: Vec<SettlingCertificate>,
    pub checks: Vec<CheckReport>,
    pub trajectories: Vec<TrajectoryRecord>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub demos: Vec<DemoReport>,
    pub messages: Vec<String>,
    /// Seconds per phase.
    pub timings: BTreeMap<String, f64>,
}

impl Report {
    pub fn new(command: &str, config: &RunConfig) -> Self {
        Self {
            command: command.to_string(),
            config: config.clone(),
            config_hash: config.hash(),
            status: ExitStatus::Pass,
            exit_code: 0,
            certificates: Vec::new(),
            checks: Vec::new(),
            trajectories: Vec::new(),
            demos: Vec::new(),
            messages: Vec::new(),
            timings: BTreeMap::new(),
        }
    }

    pub fn escalate(&mut self, status: ExitStatus) {
        self.status = self.status.worst(status);
        self.exit_code = self.status.code();
    }

    pub fn fail(&mut self, e: &Error) {
        self.messages.push(e.to_string());
        self.escalate(ExitStatus::for_error(e));
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}
