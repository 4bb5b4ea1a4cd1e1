use serde::{Deserialize, Serialize};

use super::selection::{SelectionStrategy, Selector};
use super::trajectory::Trajectory;
use crate::certifier::{epiderivative, LyapunovCandidate};
use crate::comparison::{comparison_solution, RateSpec};
use crate::error::{Error, Result};
use crate::linalg::norm;
use crate::setvalued::CaratheodoryMap;

/// Step-size policy for the explicit Euler scheme.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct StepControl {
    pub initial: f64,
    pub min: f64,
    pub max: f64,
    /// Largest accepted `|Δx| / |x|` per step.
    pub max_relative_change: f64,
    /// Midpoint membership passes when the residual is at most
    /// `tol_set + switch_ratio · |f|`.
    pub switch_ratio: f64,
    /// Halvings spent on a failing membership test before the step is
    /// accepted as a switching step.
    pub max_switch_halvings: u32,
    pub growth: f64,
    pub eps_zero: f64,
    pub tol_set: f64,
    pub max_steps: usize,
}

impl Default for StepControl {
    fn default() -> Self {
        Self {
            initial: 1e-2,
            min: 1e-12,
            max: 1e-2,
            max_relative_change: 0.1,
            switch_ratio: 0.25,
            max_switch_halvings: 4,
            growth: 2.0,
            eps_zero: 1e-6,
            tol_set: 1e-9,
            max_steps: 2_000_000,
        }
    }
}

impl StepControl {
    pub fn with_max_step(mut self, max: f64) -> Self {
        self.max = max;
        self.initial = self.initial.min(max);
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(0.0 < self.min && self.min <= self.initial && self.initial <= self.max && self.max.is_finite()) {
            return Err(Error::Config(format!(
                "step control needs 0 < min <= initial <= max, got ({}, {}, {})",
                self.min, self.initial, self.max
            )));
        }
        if !(self.eps_zero > 0.0 && self.tol_set >= 0.0 && self.max_relative_change > 0.0 && self.growth >= 1.0) {
            return Err(Error::Config(
                "step control needs eps_zero > 0, tol_set >= 0, max_relative_change > 0, growth >= 1".into(),
            ));
        }
        Ok(())
    }
}

/// Whether the dead zone may capture `x`: the origin is an equilibrium,
/// and either `V` is absent or the weak decrease margin at `x` is
/// nonpositive.
fn may_snap(
    map: &CaratheodoryMap,
    v: Option<&LyapunovCandidate>,
    rate: Option<&RateSpec>,
    t: f64,
    x: &[f64],
) -> Result<bool> {
    if !map.has_equilibrium() {
        return Ok(false);
    }
    let Some(v) = v else { return Ok(true) };
    let decay = rate.map_or(0.0, |r| r.decay(t, v.value(t, x)));
    for f in map.value(t, x)?.vertices()? {
        if epiderivative(v, t, x, &f)? + decay <= 0.0 {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Explicit Euler for `x' ∈ F(t, x)` with a velocity picked by `sel` at
/// the left endpoint of each step.
///
/// A step is halved while `|Δx|` exceeds `max_relative_change · |x|`, or
/// while the selected velocity is far from `F` at the step midpoint (a
/// switching surface lies inside the step). The latter gives up after
/// `max_switch_halvings` so sliding motions chatter instead of stalling.
/// Once `|x| ≤ eps_zero` and the decrease margin allows it, the state
/// snaps to zero; `0 ∈ F(t, 0)` keeps it there, so the trajectory ends
/// with that sample.
pub fn integrate(
    map: &CaratheodoryMap,
    sel: SelectionStrategy,
    t0: f64,
    x0: &[f64],
    t_end: f64,
    ctrl: &StepControl,
    v: Option<&LyapunovCandidate>,
    rate: Option<&RateSpec>,
) -> Result<Trajectory> {
    ctrl.validate()?;
    if !(t0 < t_end) {
        return Err(Error::Config(format!("need t0 < t_end, got {t0} >= {t_end}")));
    }
    if x0.len() != map.dim() {
        return Err(Error::DimensionMismatch {
            expected: map.dim(),
            found: x0.len(),
        });
    }
    if let Some(v) = v {
        if !v.in_domain(x0) {
            return Err(Error::EvaluationDomain { t: t0, x: x0.to_vec() });
        }
    }

    let mut selector = Selector::new(sel);
    let mut times = vec![t0];
    let mut states = vec![x0.to_vec()];
    let mut velocities: Vec<Vec<f64>> = Vec::new();
    let mut settled_at = None;
    let mut snapped_from = None;
    let mut switching_steps = 0;

    let r0 = norm(x0);
    let envelope = |t: f64| 1.1 * (1.0 + r0) * map.growth().cumulative(t0, t).exp() - 1.0;
    let end_tol = 1e-14 * t_end.abs().max(1.0);

    let mut t = t0;
    let mut x = x0.to_vec();
    let mut step = ctrl.initial;
    if r0 == 0.0 && map.has_equilibrium() {
        settled_at = Some(t0);
    } else if r0 <= ctrl.eps_zero && may_snap(map, v, rate, t, &x)? {
        snapped_from = Some(x.clone());
        x.iter_mut().for_each(|c| *c = 0.0);
        states[0] = x.clone();
        settled_at = Some(t0);
    }

    let mut steps = 0usize;
    while settled_at.is_none() && t_end - t > end_tol {
        steps += 1;
        if steps > ctrl.max_steps {
            return Err(Error::StepStall { t, step });
        }
        let set = map.value(t, &x)?;
        let verts = set.vertices()?;
        let f = selector.pick(&verts, v, t, &x)?;
        let fnorm = norm(&f);
        let r = norm(&x);

        let mut h = step.min(t_end - t).max(ctrl.min.min(t_end - t));
        let mut switch_halvings = 0;
        let x_new = loop {
            let x_new: Vec<f64> = x.iter().zip(&f).map(|(a, b)| a + h * b).collect();
            if r > 0.0 && h * fnorm > ctrl.max_relative_change * r {
                if h <= ctrl.min {
                    return Err(Error::StepStall { t, step: h });
                }
                h = (0.5 * h).max(ctrl.min);
                continue;
            }
            let mid: Vec<f64> = x.iter().zip(&f).map(|(a, b)| a + 0.5 * h * b).collect();
            let residual = map.value(t + 0.5 * h, &mid)?.distance(&f)?;
            if residual > ctrl.tol_set + ctrl.switch_ratio * fnorm {
                if switch_halvings < ctrl.max_switch_halvings && 0.5 * h >= ctrl.min {
                    switch_halvings += 1;
                    h *= 0.5;
                    continue;
                }
                switching_steps += 1;
            }
            break x_new;
        };

        t = if t_end - (t + h) <= end_tol { t_end } else { t + h };
        x = x_new;
        velocities.push(f);
        let bound = envelope(t);
        let rn = norm(&x);
        if rn > bound {
            return Err(Error::BlowUp { t, norm: rn, bound });
        }
        if rn <= ctrl.eps_zero && may_snap(map, v, rate, t, &x)? {
            snapped_from = Some(x.clone());
            x.iter_mut().for_each(|c| *c = 0.0);
            settled_at = Some(t);
        }
        times.push(t);
        states.push(x.clone());
        // a switching step does not shrink the next proposal: near a
        // sliding surface every step crosses it, and carrying the halved
        // step over would shrink it geometrically
        if switch_halvings == 0 {
            step = (h * ctrl.growth).min(ctrl.max);
        }
    }

    let mut tr = Trajectory {
        times,
        states,
        velocities,
        v_values: None,
        phi_bound: None,
        settled_at,
        snapped_from,
        switching_steps,
    };
    if let Some(v) = v {
        let vals: Vec<f64> = tr.times.iter().zip(&tr.states).map(|(t, x)| v.value(*t, x)).collect();
        if let Some(rate) = rate {
            let v0 = v.value(t0, x0);
            tr.phi_bound = Some(
                tr.times
                    .iter()
                    .map(|&t| comparison_solution(rate, t0, v0, t))
                    .collect::<Result<_>>()?,
            );
        }
        tr.v_values = Some(vals);
    }
    debug_assert!(tr.states.iter().all(|s| s.len() == x0.len()));
    debug_assert!(tr.times.windows(2).all(|w| w[0] < w[1]));
    Ok(tr)
}
