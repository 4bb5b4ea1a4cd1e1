use serde::{Deserialize, Serialize};

use super::trajectory::Trajectory;
use crate::certifier::{LyapunovCandidate, RateFunctionW};
use crate::comparison::{comparison_solution, RateSpec, SettlingCertificate};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecreaseReport {
    pub pass: bool,
    /// `max over t < s of V(s) - V(t) + ∫_t^s W`.
    pub worst_margin: f64,
    /// Sample times `(t, s)` attaining the worst margin.
    pub witness: Option<(f64, f64)>,
}

/// Checks `V(s, x(s)) ≤ V(t, x(t)) - ∫_t^s W(τ, x(τ)) dτ` for every pair of
/// samples `t < s`, with the integral by the trapezoid rule.
///
/// With `A_k = V_k + ∫_{t_0}^{t_k} W` the margin of `(i, j)` is
/// `A_j - A_i`, so a running minimum covers all pairs in one pass.
pub fn verify_decrease(traj: &Trajectory, v: &LyapunovCandidate, w: &RateFunctionW, tol: f64) -> Result<DecreaseReport> {
    if traj.len() < 2 {
        return Err(Error::MalformedSamples("decrease check needs at least two samples".into()));
    }
    let vals: Vec<f64> = traj.times.iter().zip(&traj.states).map(|(t, x)| v.value(*t, x)).collect();
    let ws: Vec<f64> = traj.times.iter().zip(&traj.states).map(|(t, x)| w.eval(*t, x)).collect();
    let mut integral = 0.0;
    let mut min_a = (vals[0], 0usize);
    let mut worst = (f64::NEG_INFINITY, None);
    for j in 1..traj.len() {
        integral += 0.5 * (traj.times[j] - traj.times[j - 1]) * (ws[j] + ws[j - 1]);
        let a = vals[j] + integral;
        let m = a - min_a.0;
        if m > worst.0 {
            worst = (m, Some((traj.times[min_a.1], traj.times[j])));
        }
        if a < min_a.0 {
            min_a = (a, j);
        }
    }
    Ok(DecreaseReport {
        pass: worst.0 <= tol,
        worst_margin: worst.0,
        witness: worst.1,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SettlingVerdict {
    pub pass: bool,
    pub settled_at: f64,
    pub t_bound: f64,
    /// `max_t V(t, x(t)) - φ(t)` over samples.
    pub worst_excess: f64,
    pub witness_t: f64,
}

/// Passes iff the trajectory settled by `T_bound + tol` and
/// `V(t, x(t)) ≤ φ(t) + tol` at every sample, `φ` the comparison solution
/// started from the certificate's `v0`.
pub fn verify_settling(
    traj: &Trajectory,
    cert: &SettlingCertificate,
    v: &LyapunovCandidate,
    rate: &RateSpec,
    tol: f64,
) -> Result<SettlingVerdict> {
    let t_bound = cert.t_bound.finite().ok_or(Error::UnboundedCertificate)?;
    let settled_at = traj.settled_at.ok_or(Error::Unsettled)?;
    let mut worst = (f64::NEG_INFINITY, cert.t0);
    for (t, x) in traj.times.iter().zip(&traj.states) {
        let excess = v.value(*t, x) - comparison_solution(rate, cert.t0, cert.v0, *t)?;
        if excess > worst.0 {
            worst = (excess, *t);
        }
    }
    Ok(SettlingVerdict {
        pass: settled_at <= t_bound + tol && worst.0 <= tol,
        settled_at,
        t_bound,
        worst_excess: worst.0,
        witness_t: worst.1,
    })
}
