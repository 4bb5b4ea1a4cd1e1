use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{dist, norm};

/// Sampled solution of `x' ∈ F(t, x)`.
///
/// `velocities[k]` drives the step from sample `k` to `k + 1`. When the
/// dead zone captured the state, `snapped_from` keeps the pre-snap state
/// and the sample at `settled_at` is exactly zero.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<Vec<f64>>,
    pub velocities: Vec<Vec<f64>>,
    /// `V(t, x(t))` per sample, when a candidate was supplied.
    pub v_values: Option<Vec<f64>>,
    /// Comparison bound `φ(t)` per sample, when `V` and a rate were supplied.
    pub phi_bound: Option<Vec<f64>>,
    pub settled_at: Option<f64>,
    pub snapped_from: Option<Vec<f64>>,
    /// Steps accepted despite a failed midpoint membership test.
    pub switching_steps: usize,
}

impl Trajectory {
    /// Bare samples, e.g. from an analytic solution; velocities are the
    /// forward differences so the Euler consistency relation holds.
    pub fn from_samples(times: Vec<f64>, states: Vec<Vec<f64>>) -> Result<Self> {
        if times.len() != states.len() || times.is_empty() {
            return Err(Error::MalformedSamples(format!(
                "{} times vs {} states",
                times.len(),
                states.len()
            )));
        }
        if times.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::MalformedSamples("times must be strictly increasing".into()));
        }
        let velocities = times
            .windows(2)
            .zip(states.windows(2))
            .map(|(t, x)| {
                let dt = t[1] - t[0];
                x[1].iter().zip(&x[0]).map(|(b, a)| (b - a) / dt).collect()
            })
            .collect();
        Ok(Self {
            times,
            states,
            velocities,
            v_values: None,
            phi_bound: None,
            settled_at: None,
            snapped_from: None,
            switching_steps: 0,
        })
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.states.first().map_or(0, Vec::len)
    }

    pub fn final_state(&self) -> &[f64] {
        self.states.last().map_or(&[], Vec::as_slice)
    }

    /// `sup_t |x(t)|` over samples.
    pub fn sup_norm(&self) -> f64 {
        self.states.iter().map(|x| norm(x)).fold(0.0, f64::max)
    }

    /// Largest `|x_{k+1} - x_k - (t_{k+1} - t_k) f_k|`, skipping the
    /// dead-zone snap.
    pub fn consistency_residual(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for k in 0..self.velocities.len() {
            if self.settled_at == Some(self.times[k + 1]) && self.snapped_from.is_some() {
                continue;
            }
            let dt = self.times[k + 1] - self.times[k];
            let pred: Vec<f64> = self.states[k]
                .iter()
                .zip(&self.velocities[k])
                .map(|(x, f)| x + dt * f)
                .collect();
            worst = worst.max(dist(&pred, &self.states[k + 1]));
        }
        worst
    }

    fn is_settled(&self, t: f64) -> bool {
        self.settled_at.is_some_and(|s| t >= s)
    }

    /// CSV with header `t,x_1,…,x_n,V,phi_bound,settled`; missing `V` or
    /// `φ` columns are written as `NaN`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let n = self.dim();
        let mut w = csv::Writer::from_writer(out);
        let mut header = vec!["t".to_string()];
        header.extend((1..=n).map(|i| format!("x_{i}")));
        header.extend(["V", "phi_bound", "settled"].map(String::from));
        w.write_record(&header)?;
        for (k, t) in self.times.iter().enumerate() {
            let mut row = vec![format!("{t:.16e}")];
            row.extend(self.states[k].iter().map(|x| format!("{x:.16e}")));
            let v = self.v_values.as_ref().map_or(f64::NAN, |v| v[k]);
            let phi = self.phi_bound.as_ref().map_or(f64::NAN, |p| p[k]);
            row.push(format!("{v:.16e}"));
            row.push(format!("{phi:.16e}"));
            row.push(if self.is_settled(*t) { "1" } else { "0" }.to_string());
            w.write_record(&row)?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn save_csv(&self, path: impl AsRef<Path>) -> Result<()> {
        self.write_csv(std::fs::File::create(path)?)
    }
}
