use serde::{Deserialize, Serialize};

use super::grid::{geometric, sphere_directions};
use super::lyapunov::LyapunovCandidate;
use crate::comparison::{settling_time_bound, RateSpec};
use crate::error::{Error, Result};

const HORIZON_SAMPLES: usize = 33;
const BALL_SHELLS: usize = 16;
const BISECTION_STEPS: usize = 60;

/// Local basin `|x0| < delta` for a locally finite-time stable origin.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BasinEstimate {
    pub epsilon: f64,
    pub delta: f64,
    /// Radius whose ball bounds the initial Lyapunov value.
    pub radius: f64,
    /// `sup V(t0, x)` over `|x| ≤ radius`.
    pub rho0: f64,
    /// Settling horizon for `rho0`.
    pub horizon: f64,
    /// Sampled `inf V(t, x)` over `t ∈ [t0, horizon]`, `|x| = epsilon`.
    pub v_epsilon: f64,
    /// Sampled `sup V(t0, x)` over `|x| ≤ delta`.
    pub sup_at_delta: f64,
}

fn sphere_sup(v: &LyapunovCandidate, t: f64, r: f64, dirs: &[Vec<f64>]) -> f64 {
    dirs.iter()
        .map(|d| v.value(t, &d.iter().map(|c| c * r).collect::<Vec<_>>()))
        .fold(0.0, f64::max)
}

fn ball_sup(v: &LyapunovCandidate, t: f64, r: f64, dirs: &[Vec<f64>]) -> f64 {
    geometric(r * 1e-4, r, BALL_SHELLS)
        .into_iter()
        .map(|s| sphere_sup(v, t, s, dirs))
        .fold(0.0, f64::max)
}

/// Estimates `delta ∈ (0, epsilon)` such that every solution starting in
/// `|x0| ≤ delta` at `t0` stays in the `epsilon`-ball and settles.
///
/// The initial Lyapunov values are bounded on the ball of radius `epsilon`
/// itself: a solution with `V(t0, x0) < V_ε / 2` cannot reach the sphere
/// `|x| = epsilon` before the horizon, and has settled by then.
/// Sphere infima use `64 n` directions per sample, so `v_epsilon` can only
/// overshoot by the sampling gap; the half-margin absorbs it in practice.
pub fn basin_estimate(
    v: &LyapunovCandidate,
    rate: &RateSpec,
    t0: f64,
    epsilon: f64,
    domain_radius: f64,
) -> Result<BasinEstimate> {
    if !(epsilon > 0.0 && epsilon.is_finite()) {
        return Err(Error::Config(format!("epsilon must be positive, got {epsilon}")));
    }
    let domain = v.domain_radius().map_or(domain_radius, |r| r.min(domain_radius));
    if epsilon >= domain {
        return Err(Error::NoBasin(format!(
            "epsilon {epsilon} is not inside the domain radius {domain}"
        )));
    }
    let n = v.dim();
    let dirs = sphere_directions(n, 64 * n, 0x5eed);
    let radius = epsilon;
    let rho0 = ball_sup(v, t0, radius, &dirs);
    let cert = settling_time_bound(rate, t0, rho0)?;
    let horizon = cert.t_bound.finite().ok_or_else(|| {
        Error::NoBasin(format!(
            "tail mass {:e} of the gain does not exceed G(rho0) = {:e}",
            cert.tail_mass, cert.g_v0
        ))
    })?;

    let times: Vec<f64> = if horizon > t0 {
        (0..HORIZON_SAMPLES)
            .map(|i| t0 + (horizon - t0) * i as f64 / (HORIZON_SAMPLES - 1) as f64)
            .collect()
    } else {
        vec![t0]
    };
    let v_epsilon = times
        .iter()
        .flat_map(|&t| {
            dirs.iter()
                .map(move |d| v.value(t, &d.iter().map(|c| c * epsilon).collect::<Vec<_>>()))
        })
        .fold(f64::INFINITY, f64::min);
    if !(v_epsilon > 1e-300) {
        return Err(Error::NoBasin(format!(
            "sampled infimum of V on the epsilon-sphere is {v_epsilon:e}"
        )));
    }

    let target = 0.5 * v_epsilon;
    let (mut lo, mut hi) = (0.0, epsilon);
    for _ in 0..BISECTION_STEPS {
        let mid = 0.5 * (lo + hi);
        if ball_sup(v, t0, mid, &dirs) < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    if lo <= 0.0 {
        return Err(Error::NoBasin("no positive delta keeps V below V_eps / 2".into()));
    }
    Ok(BasinEstimate {
        epsilon,
        delta: lo,
        radius,
        rho0,
        horizon,
        v_epsilon,
        sup_at_delta: ball_sup(v, t0, lo, &dirs),
    })
}
