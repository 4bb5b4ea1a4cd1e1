use std::path::Path;
use std::time::Instant;

use rayon::prelude::*;

use super::config::{Preset, RunConfig, SystemConfig};
use super::report::{ExitStatus, Report, TrajectoryRecord};
use crate::certifier::{check_stability, Mode};
use crate::comparison::settling_time_bound;
use crate::error::{Error, Result};
use crate::hopfield::{demo, DemoOptions, HopfieldSpec};
use crate::integrator::{integrate, verify_settling, SelectionStrategy, Trajectory};

fn strategy_label(s: SelectionStrategy) -> String {
    match s {
        SelectionStrategy::SteepestDescent => "steepest".into(),
        SelectionStrategy::FixedVertex { index } => format!("fixed-{index}"),
        SelectionStrategy::RandomVertex { seed } => format!("random-{seed}"),
        SelectionStrategy::Continuity => "continuity".into(),
    }
}

fn timed<T>(report: &mut Report, phase: &str, f: impl FnOnce() -> T) -> T {
    let start = Instant::now();
    let out = f();
    *report.timings.entry(phase.to_string()).or_default() += start.elapsed().as_secs_f64();
    out
}

fn write_csv(out: Option<&Path>, name: &str, tr: &Trajectory) -> Result<Option<String>> {
    let Some(dir) = out else { return Ok(None) };
    std::fs::create_dir_all(dir)?;
    let path = dir.join(name);
    tr.save_csv(&path)?;
    Ok(Some(path.display().to_string()))
}

/// Settling-time certificates for `v0`, or for `V(t0, x0)` per initial state.
pub fn cmd_settle_bound(config: &RunConfig, require_finite: bool) -> Report {
    let mut report = Report::new("settle-bound", config);
    if let Err(e) = settle_bound_into(config, require_finite, &mut report) {
        report.fail(&e);
    }
    report
}

fn settle_bound_into(config: &RunConfig, require_finite: bool, report: &mut Report) -> Result<()> {
    let sys = config.resolve()?;
    let rate = sys
        .rate
        .ok_or_else(|| Error::Config("settle-bound needs a rate".into()))?;
    let v0s: Vec<f64> = match (config.v0, &sys.v) {
        (Some(v0), _) => vec![v0],
        (None, Some(v)) => sys.initial.iter().map(|x| v.value(config.t0, x)).collect(),
        (None, None) => return Err(Error::Config("settle-bound needs v0, or a Lyapunov candidate and x0".into())),
    };
    for v0 in v0s {
        if !(v0 >= 0.0 && v0.is_finite()) {
            return Err(Error::Config(format!("v0 must be finite and >= 0, got {v0}")));
        }
        let cert = timed(report, "certificate", || settling_time_bound(&rate, config.t0, v0))?;
        if !cert.t_bound.is_finite() {
            report.messages.push(format!("unbounded certificate for v0 = {v0}"));
            if require_finite {
                report.escalate(ExitStatus::Unbounded);
            }
        }
        report.certificates.push(cert);
    }
    Ok(())
}

/// Grid check of the weak or strong decrease condition.
pub fn cmd_check(config: &RunConfig, mode: Mode) -> Report {
    let mut report = Report::new(&format!("check --mode {}", mode_name(mode)), config);
    if let Err(e) = check_into(config, mode, &mut report) {
        report.fail(&e);
    }
    report
}

fn mode_name(mode: Mode) -> &'static str {
    match mode {
        Mode::Weak => "weak",
        Mode::Strong => "strong",
    }
}

fn check_into(config: &RunConfig, mode: Mode, report: &mut Report) -> Result<()> {
    let sys = config.resolve()?;
    let v = sys
        .v
        .ok_or_else(|| Error::Config("check needs a Lyapunov candidate".into()))?;
    let rate = sys
        .rate
        .ok_or_else(|| Error::Config("check needs a rate".into()))?;
    let check = timed(report, "check", || check_stability(&v, &sys.map, &rate, mode, &sys.grid))?;
    if !check.pass {
        report.messages.push(format!(
            "{} of {} grid points violate the {} condition",
            check.violations.len(),
            check.evaluations,
            mode_name(mode)
        ));
        report.escalate(ExitStatus::Violation);
    }
    report.messages.extend(check.warnings.iter().cloned());
    report.checks.push(check);
    Ok(())
}

/// Integrates every initial state under every configured selection and
/// writes one CSV per run into `out`.
pub fn cmd_simulate(config: &RunConfig, out: Option<&Path>) -> Report {
    let mut report = Report::new("simulate", config);
    if let Err(e) = simulate_into(config, out, &mut report) {
        report.fail(&e);
    }
    report
}

fn simulate_into(config: &RunConfig, out: Option<&Path>, report: &mut Report) -> Result<()> {
    let sys = config.resolve()?;
    if sys.initial.is_empty() {
        return Err(Error::Config("simulate needs at least one initial state".into()));
    }
    let strategies = if config.selections.is_empty() {
        vec![SelectionStrategy::SteepestDescent]
    } else {
        config.selections.clone()
    };
    let jobs: Vec<(usize, SelectionStrategy)> = (0..sys.initial.len())
        .flat_map(|i| strategies.iter().map(move |&s| (i, s)))
        .collect();
    let t_end = config.t0 + sys.horizon;
    let runs: Vec<Result<Trajectory>> = timed(report, "integrate", || {
        jobs.par_iter()
            .map(|&(i, s)| {
                integrate(
                    &sys.map,
                    s,
                    config.t0,
                    &sys.initial[i],
                    t_end,
                    &config.step,
                    sys.v.as_ref(),
                    sys.rate.as_ref(),
                )
            })
            .collect()
    });

    for (&(i, strategy), run) in jobs.iter().zip(runs) {
        let x0 = sys.initial[i].clone();
        let tr = match run {
            Ok(tr) => tr,
            Err(e) => {
                report.trajectories.push(TrajectoryRecord {
                    initial_index: i,
                    x0,
                    strategy,
                    settled_at: None,
                    samples: 0,
                    csv: None,
                    verdict: None,
                    note: Some(e.to_string()),
                });
                report.fail(&e);
                continue;
            }
        };
        let csv = write_csv(out, &format!("traj_{i}_{}.csv", strategy_label(strategy)), &tr)?;
        let mut record = TrajectoryRecord {
            initial_index: i,
            x0: x0.clone(),
            strategy,
            settled_at: tr.settled_at,
            samples: tr.len(),
            csv,
            verdict: None,
            note: None,
        };
        if let (Some(v), Some(rate)) = (&sys.v, &sys.rate) {
            let cert = settling_time_bound(rate, config.t0, v.value(config.t0, &x0))?;
            if cert.t_bound.is_finite() {
                if tr.settled_at.is_some() {
                    let tol = (10.0 * config.step.eps_zero).max(1e-5);
                    let verdict = verify_settling(&tr, &cert, v, rate, tol)?;
                    if !verdict.pass {
                        report.escalate(ExitStatus::Violation);
                    }
                    record.verdict = Some(verdict);
                } else {
                    record.note = Some(format!("did not settle by t = {t_end}; certificate promised {:?}", cert.t_bound.finite()));
                    report.escalate(ExitStatus::Violation);
                }
            } else {
                record.note = Some("certificate unbounded; no settling verdict".into());
            }
            report.certificates.push(cert);
        }
        report.trajectories.push(record);
    }
    Ok(())
}

/// Strong check, basin, certificate and selection sweep for a Hopfield
/// network, one demo per initial state.
pub fn cmd_hopfield_demo(config: &RunConfig, out: Option<&Path>) -> Report {
    let mut report = Report::new("hopfield-demo", config);
    if let Err(e) = hopfield_into(config, out, &mut report) {
        report.fail(&e);
    }
    report
}

fn hopfield_into(config: &RunConfig, out: Option<&Path>, report: &mut Report) -> Result<()> {
    let sys = timed(report, "build", || config.resolve())?;
    let hop = sys
        .hopfield
        .as_ref()
        .ok_or_else(|| Error::Config("hopfield-demo needs a hopfield system".into()))?;
    let opts = DemoOptions {
        n_random: config.n_random,
        seed: config.seed,
        epsilon: config.epsilon,
        grid: Some(sys.grid.clone()),
    };
    for (i, x0) in sys.initial.iter().enumerate() {
        let d = timed(report, "demo", || demo(hop, config.t0, x0, &config.step, &opts))?;
        let strategies: Vec<SelectionStrategy> = d.sweep.runs.iter().map(|r| r.strategy).collect();
        for (k, (tr, strategy)) in d.trajectories.iter().zip(strategies).enumerate() {
            let csv = write_csv(out, &format!("hopfield_{i}_{}.csv", strategy_label(strategy)), tr)?;
            report.trajectories.push(TrajectoryRecord {
                initial_index: i,
                x0: x0.clone(),
                strategy,
                settled_at: tr.settled_at,
                samples: tr.len(),
                csv,
                verdict: d.verdicts.get(k).cloned().filter(|_| d.verdicts.len() == d.trajectories.len()),
                note: None,
            });
        }
        if !d.pass {
            report.escalate(ExitStatus::Violation);
        }
        report.messages.extend(d.warnings.iter().map(|w| format!("x0 #{i}: {w}")));
        report.certificates.push(d.certificate.clone());
        report.checks.push(d.check.clone());
        report.demos.push(d);
    }
    Ok(())
}

/// Hopfield spec behind a config, for overrides such as `--delta`.
pub fn hopfield_spec_of(config: &RunConfig) -> Option<HopfieldSpec> {
    match &config.system {
        SystemConfig::Preset(Preset::HopfieldRef1) => Some(HopfieldSpec::reference()),
        SystemConfig::Hopfield { hopfield } => Some(hopfield.clone()),
        SystemConfig::Preset(_) => None,
    }
}
