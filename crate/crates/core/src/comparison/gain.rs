use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Nonnegative, locally integrable gain `c: [0, ∞) → [0, ∞)`.
///
/// Every preset has a closed-form antiderivative, so cumulative gains are
/// exact up to rounding. Tables are zero outside their sampled range.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum GainFunction {
    /// `c(t) = value`
    Const { value: f64 },
    /// `c(t) = scale · t^exponent`, `exponent > -1`
    Power { scale: f64, exponent: f64 },
    /// `c(t) = delta · exp(rate · t)`
    Exp { delta: f64, rate: f64 },
    /// `c(t) = v[i]` on `[t[i], t[i+1])`; `v.len() == t.len() - 1`
    Steps { t: Vec<f64>, v: Vec<f64> },
    /// Piecewise-linear interpolation of `(t[i], v[i])`
    Table { t: Vec<f64>, v: Vec<f64> },
}

fn strictly_increasing(t: &[f64]) -> bool {
    t.windows(2).all(|w| w[0] < w[1])
}

impl GainFunction {
    pub fn constant(value: f64) -> Self {
        Self::Const { value }
    }

    pub fn exp(delta: f64, rate: f64) -> Self {
        Self::Exp { delta, rate }
    }

    /// Indicator-style steps: `values[i]` on `[breaks[i], breaks[i+1])`.
    pub fn steps(breaks: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        let g = Self::Steps {
            t: breaks,
            v: values,
        };
        g.validate()?;
        Ok(g)
    }

    pub fn table(t: Vec<f64>, v: Vec<f64>) -> Result<Self> {
        let g = Self::Table { t, v };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidFunction(m));
        match self {
            Self::Const { value } => {
                if !(value.is_finite() && *value >= 0.0) {
                    return bad(format!("constant gain must be finite and >= 0, got {value}"));
                }
            }
            Self::Power { scale, exponent } => {
                if !(scale.is_finite() && *scale >= 0.0) {
                    return bad(format!("power gain scale must be >= 0, got {scale}"));
                }
                if !(exponent.is_finite() && *exponent > -1.0) {
                    return bad(format!(
                        "power gain exponent must exceed -1 for local integrability, got {exponent}"
                    ));
                }
            }
            Self::Exp { delta, rate } => {
                if !(delta.is_finite() && *delta >= 0.0 && rate.is_finite()) {
                    return bad(format!("exp gain needs delta >= 0 and finite rate, got ({delta}, {rate})"));
                }
            }
            Self::Steps { t, v } => {
                if t.len() < 2 || v.len() + 1 != t.len() {
                    return bad("steps need n+1 breakpoints for n values".into());
                }
                if !strictly_increasing(t) || t.iter().any(|x| !x.is_finite()) {
                    return bad("step breakpoints must be finite and strictly increasing".into());
                }
                if v.iter().any(|x| !(x.is_finite() && *x >= 0.0)) {
                    return bad("step values must be finite and >= 0".into());
                }
            }
            Self::Table { t, v } => {
                if t.len() < 2 || t.len() != v.len() {
                    return bad("table needs at least two (t, v) samples of equal length".into());
                }
                if !strictly_increasing(t) || t.iter().any(|x| !x.is_finite()) {
                    return bad("table times must be finite and strictly increasing".into());
                }
                if v.iter().any(|x| !(x.is_finite() && *x >= 0.0)) {
                    return bad("table values must be finite and >= 0".into());
                }
            }
        }
        Ok(())
    }

    pub fn eval(&self, t: f64) -> f64 {
        match self {
            Self::Const { value } => *value,
            Self::Power { scale, exponent } => {
                if *exponent == 0.0 {
                    *scale
                } else {
                    scale * t.max(0.0).powf(*exponent)
                }
            }
            Self::Exp { delta, rate } => delta * (rate * t).exp(),
            Self::Steps { t: br, v } => {
                if t < br[0] || t >= br[br.len() - 1] {
                    return 0.0;
                }
                let i = br.partition_point(|&x| x <= t) - 1;
                v[i]
            }
            Self::Table { t: ts, v } => {
                if t < ts[0] || t > ts[ts.len() - 1] {
                    return 0.0;
                }
                let i = (ts.partition_point(|&x| x <= t) - 1).min(ts.len() - 2);
                let w = (t - ts[i]) / (ts[i + 1] - ts[i]);
                v[i] + w * (v[i + 1] - v[i])
            }
        }
    }

    /// `∫_{t0}^{t1} c(τ) dτ`; `t1` may be `+∞`.
    pub fn cumulative(&self, t0: f64, t1: f64) -> f64 {
        if t1 <= t0 {
            return 0.0;
        }
        match self {
            Self::Const { value } => {
                if *value == 0.0 {
                    0.0
                } else {
                    value * (t1 - t0)
                }
            }
            Self::Power { scale, exponent } => {
                if *scale == 0.0 {
                    return 0.0;
                }
                let p = exponent + 1.0;
                if t1.is_infinite() {
                    return f64::INFINITY;
                }
                scale * (t1.max(0.0).powf(p) - t0.max(0.0).powf(p)) / p
            }
            Self::Exp { delta, rate } => {
                if *delta == 0.0 {
                    0.0
                } else if *rate == 0.0 {
                    delta * (t1 - t0)
                } else if t1.is_infinite() {
                    if *rate < 0.0 {
                        -delta / rate * (rate * t0).exp()
                    } else {
                        f64::INFINITY
                    }
                } else {
                    // expm1 keeps short intervals accurate
                    delta / rate * (rate * t0).exp() * (rate * (t1 - t0)).exp_m1()
                }
            }
            Self::Steps { t, v } => {
                let mut acc = 0.0;
                for (i, &vi) in v.iter().enumerate() {
                    let lo = t[i].max(t0);
                    let hi = t[i + 1].min(t1);
                    if hi > lo {
                        acc += vi * (hi - lo);
                    }
                }
                acc
            }
            Self::Table { t, .. } => {
                let mut acc = 0.0;
                for i in 0..t.len() - 1 {
                    let lo = t[i].max(t0);
                    let hi = t[i + 1].min(t1);
                    if hi > lo {
                        acc += 0.5 * (hi - lo) * (self.eval(lo) + self.eval(hi));
                    }
                }
                acc
            }
        }
    }

    /// `∫_{t0}^{∞} c`, possibly `+∞`.
    pub fn tail(&self, t0: f64) -> f64 {
        self.cumulative(t0, f64::INFINITY)
    }

    /// `sup_{t ≥ 0} c(t)`, possibly `+∞`.
    pub fn sup(&self) -> f64 {
        match self {
            Self::Const { value } => *value,
            Self::Power { scale, exponent } => {
                if *scale == 0.0 || *exponent == 0.0 {
                    *scale
                } else {
                    f64::INFINITY
                }
            }
            Self::Exp { delta, rate } => {
                if *rate <= 0.0 {
                    *delta
                } else if *delta == 0.0 {
                    0.0
                } else {
                    f64::INFINITY
                }
            }
            Self::Steps { v, .. } | Self::Table { v, .. } => v.iter().copied().fold(0.0, f64::max),
        }
    }

    /// `λ · c` for `λ ≥ 0`.
    pub fn scaled(&self, lambda: f64) -> Self {
        match self {
            Self::Const { value } => Self::Const {
                value: value * lambda,
            },
            Self::Power { scale, exponent } => Self::Power {
                scale: scale * lambda,
                exponent: *exponent,
            },
            Self::Exp { delta, rate } => Self::Exp {
                delta: delta * lambda,
                rate: *rate,
            },
            Self::Steps { t, v } => Self::Steps {
                t: t.clone(),
                v: v.iter().map(|x| x * lambda).collect(),
            },
            Self::Table { t, v } => Self::Table {
                t: t.clone(),
                v: v.iter().map(|x| x * lambda).collect(),
            },
        }
    }
}
