use serde::{Deserialize, Serialize};

use super::{comparison_solution, GainFunction, RateSpec};
use crate::error::{Error, Result};

/// A nonnegative function sampled on a strictly increasing time grid.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampledFunction {
    pub times: Vec<f64>,
    pub values: Vec<f64>,
}

impl SampledFunction {
    pub fn new(times: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        let s = Self { times, values };
        s.validate()?;
        Ok(s)
    }

    pub fn from_fn(times: Vec<f64>, f: impl Fn(f64) -> f64) -> Result<Self> {
        let values = times.iter().map(|&t| f(t)).collect();
        Self::new(times, values)
    }

    pub fn validate(&self) -> Result<()> {
        if self.times.is_empty() || self.times.len() != self.values.len() {
            return Err(Error::MalformedSamples(format!(
                "{} times vs {} values",
                self.times.len(),
                self.values.len()
            )));
        }
        if let Some(w) = self.times.windows(2).position(|w| !(w[0] < w[1])) {
            return Err(Error::MalformedSamples(format!(
                "times not strictly increasing at index {}",
                w + 1
            )));
        }
        if let Some(i) = self.values.iter().position(|v| !(v.is_finite() && *v >= 0.0)) {
            return Err(Error::MalformedSamples(format!(
                "value {} at index {i} is not a finite nonnegative number",
                self.values[i]
            )));
        }
        if self.times.iter().any(|t| !t.is_finite()) {
            return Err(Error::MalformedSamples("non-finite time".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampleViolation {
    pub t: f64,
    pub lhs: f64,
    pub rhs: f64,
}

/// Result of a pointwise domination check on a sample grid.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DominationReport {
    pub pass: bool,
    pub first_violation: Option<SampleViolation>,
    /// `max(lhs - rhs)` over the grid.
    pub worst_excess: f64,
}

fn scan(w: &SampledFunction, tol: f64, mut sides: impl FnMut(usize) -> Result<(f64, f64)>) -> Result<DominationReport> {
    let mut first = None;
    let mut worst = f64::NEG_INFINITY;
    for i in 0..w.times.len() {
        let (lhs, rhs) = sides(i)?;
        let excess = lhs - rhs;
        worst = worst.max(excess);
        if excess > tol && first.is_none() {
            first = Some(SampleViolation {
                t: w.times[i],
                lhs,
                rhs,
            });
        }
    }
    Ok(DominationReport {
        pass: first.is_none(),
        first_violation: first,
        worst_excess: worst,
    })
}

/// Checks `w(t)^{1-α} ≤ w(t0)^{1-α} - (1-α)∫_{t0}^{t} c` at every sample.
///
/// The right side is clamped at zero: once the bound has reached the origin
/// the only admissible value is `w = 0`.
pub fn check_gronwall_power(
    w: &SampledFunction,
    c: &GainFunction,
    alpha: f64,
    tol: f64,
) -> Result<DominationReport> {
    w.validate()?;
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::InvalidFunction(format!("alpha must lie in (0, 1), got {alpha}")));
    }
    let p = 1.0 - alpha;
    let t0 = w.times[0];
    let start = w.values[0].powf(p);
    scan(w, tol, |i| {
        let lhs = w.values[i].powf(p);
        let rhs = (start - p * c.cumulative(t0, w.times[i])).max(0.0);
        Ok((lhs, rhs))
    })
}

/// Checks `w(tᵢ) ≤ φ(tᵢ) + tol` where `φ` solves the comparison problem
/// started from `w(t0)`.
pub fn check_comparison(w: &SampledFunction, rate: &RateSpec, tol: f64) -> Result<DominationReport> {
    w.validate()?;
    let t0 = w.times[0];
    let v0 = w.values[0];
    scan(w, tol, |i| {
        let phi = comparison_solution(rate, t0, v0, w.times[i])?;
        Ok((w.values[i], phi))
    })
}
