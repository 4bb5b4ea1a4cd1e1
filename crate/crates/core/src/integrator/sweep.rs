use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::selection::SelectionStrategy;
use super::stepper::{integrate, StepControl};
use super::trajectory::Trajectory;
use crate::certifier::LyapunovCandidate;
use crate::comparison::{settling_time_bound, RateSpec, SettlingCertificate};
use crate::error::Result;
use crate::setvalued::CaratheodoryMap;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunSummary {
    pub strategy: SelectionStrategy,
    pub settled_at: Option<f64>,
    pub sup_norm: f64,
    pub switching_steps: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub certificate: SettlingCertificate,
    pub runs: Vec<RunSummary>,
    pub max_sup_norm: f64,
    /// `None` when some run did not settle.
    pub max_settled_at: Option<f64>,
    pub all_settled: bool,
    /// Every run settled by `T_bound + 10 eps_zero`.
    pub all_before_bound: bool,
}

#[derive(Clone, Debug)]
pub struct SweepResult {
    pub summary: SweepSummary,
    pub trajectories: Vec<Trajectory>,
}

/// Integrates under every fixed-vertex strategy available at `x0` plus
/// `n_random` random-vertex runs seeded `seed, seed + 1, …`. Runs execute
/// in parallel and are reported in strategy order.
#[allow(clippy::too_many_arguments)]
pub fn sweep_strong(
    map: &CaratheodoryMap,
    v: &LyapunovCandidate,
    rate: &RateSpec,
    t0: f64,
    x0: &[f64],
    ctrl: &StepControl,
    n_random: usize,
    t_end: f64,
    seed: u64,
) -> Result<SweepResult> {
    let certificate = settling_time_bound(rate, t0, v.value(t0, x0))?;
    let fixed = map.value(t0, x0)?.vertices()?.len();
    let strategies: Vec<SelectionStrategy> = (0..fixed)
        .map(|index| SelectionStrategy::FixedVertex { index })
        .chain((0..n_random as u64).map(|k| SelectionStrategy::RandomVertex { seed: seed.wrapping_add(k) }))
        .collect();
    let trajectories = strategies
        .par_iter()
        .map(|&s| integrate(map, s, t0, x0, t_end, ctrl, Some(v), Some(rate)))
        .collect::<Result<Vec<_>>>()?;

    let runs: Vec<RunSummary> = strategies
        .iter()
        .zip(&trajectories)
        .map(|(&strategy, tr)| RunSummary {
            strategy,
            settled_at: tr.settled_at,
            sup_norm: tr.sup_norm(),
            switching_steps: tr.switching_steps,
        })
        .collect();
    let all_settled = runs.iter().all(|r| r.settled_at.is_some());
    let max_settled_at = all_settled.then(|| runs.iter().filter_map(|r| r.settled_at).fold(t0, f64::max));
    let all_before_bound = match (max_settled_at, certificate.t_bound.finite()) {
        (Some(s), Some(b)) => s <= b + 10.0 * ctrl.eps_zero,
        _ => false,
    };
    Ok(SweepResult {
        summary: SweepSummary {
            certificate,
            max_sup_norm: runs.iter().map(|r| r.sup_norm).fold(0.0, f64::max),
            runs,
            max_settled_at,
            all_settled,
            all_before_bound,
        },
        trajectories,
    })
}
