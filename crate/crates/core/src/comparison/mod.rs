//! Scalar comparison machinery: the barrier integral `G(v) = ∫₀ᵛ 1/g`,
//! settling-time bounds, solutions of `φ' = -c(t) g(φ)`, and Gronwall-type
//! domination checks on sampled functions.

mod gain;
mod gronwall;
mod nonlinearity;

use std::fmt;

use serde::de::{self, Deserializer, Visitor};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

pub use gain::GainFunction;
pub use gronwall::{check_comparison, check_gronwall_power, DominationReport, SampledFunction, SampleViolation};
pub use nonlinearity::ComparisonNonlinearity;

use crate::error::Result;

/// The gain/nonlinearity pair `(c, g)` of the decrease condition
/// `D V ≤ -c(t) g(V)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RateSpec {
    pub c: GainFunction,
    pub g: ComparisonNonlinearity,
}

impl RateSpec {
    pub fn new(c: GainFunction, g: ComparisonNonlinearity) -> Result<Self> {
        c.validate()?;
        g.validate()?;
        Ok(Self { c, g })
    }

    /// `c(t) · g(v)`
    pub fn decay(&self, t: f64, v: f64) -> f64 {
        let c = self.c.eval(t);
        if c == 0.0 {
            0.0
        } else {
            c * self.g.eval(v)
        }
    }

    /// Same `g`, gain scaled by `lambda`.
    pub fn scaled(&self, lambda: f64) -> Self {
        Self {
            c: self.c.scaled(lambda),
            g: self.g.clone(),
        }
    }
}

/// A settling time that may fail to exist.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SettlingTime {
    Finite(f64),
    Unbounded,
}

impl SettlingTime {
    pub fn finite(self) -> Option<f64> {
        match self {
            Self::Finite(t) => Some(t),
            Self::Unbounded => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Self::Finite(_))
    }
}

impl Serialize for SettlingTime {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Self::Finite(t) => s.serialize_f64(*t),
            Self::Unbounded => s.serialize_str("unbounded"),
        }
    }
}

impl<'de> Deserialize<'de> for SettlingTime {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = SettlingTime;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a number or \"unbounded\"")
            }
            fn visit_f64<E: de::Error>(self, v: f64) -> std::result::Result<SettlingTime, E> {
                Ok(SettlingTime::Finite(v))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<SettlingTime, E> {
                Ok(SettlingTime::Finite(v as f64))
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<SettlingTime, E> {
                Ok(SettlingTime::Finite(v as f64))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<SettlingTime, E> {
                if v == "unbounded" {
                    Ok(SettlingTime::Unbounded)
                } else {
                    Err(E::invalid_value(de::Unexpected::Str(v), &self))
                }
            }
        }
        d.deserialize_any(V)
    }
}

/// Serializes `+∞` as the string `"infinity"` (JSON has no infinities).
pub(crate) mod extended_f64 {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
        if v.is_infinite() && *v > 0.0 {
            s.serialize_str("infinity")
        } else {
            s.serialize_f64(*v)
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Num(f64),
            Str(String),
        }
        match Repr::deserialize(d)? {
            Repr::Num(v) => Ok(v),
            Repr::Str(s) if s == "infinity" => Ok(f64::INFINITY),
            Repr::Str(s) => Err(serde::de::Error::custom(format!("unexpected {s}"))),
        }
    }
}

/// Upper bound on the settling time from `∫₀^{v0} 1/g ≤ ∫_{t0}^{T} c`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SettlingCertificate {
    pub t0: f64,
    pub v0: f64,
    #[serde(rename = "G_v0")]
    pub g_v0: f64,
    #[serde(rename = "T_bound")]
    pub t_bound: SettlingTime,
    #[serde(with = "extended_f64")]
    pub tail_mass: f64,
}

/// `G(v) = ∫₀ᵛ 1/g(s) ds`.
pub fn barrier_integral(g: &ComparisonNonlinearity, v: f64) -> Result<f64> {
    g.barrier(v)
}

/// `∫_{t0}^{t1} c(τ) dτ`.
pub fn cumulative_gain(c: &GainFunction, t0: f64, t1: f64) -> f64 {
    c.cumulative(t0, t1)
}

/// Smallest `T ≥ t0` with `∫_{t0}^{T} c ≥ target`, or `None` when the
/// doubling bracket `t0 + 2^k`, `k ≤ 60`, never reaches the target.
fn first_reach(c: &GainFunction, t0: f64, target: f64) -> Option<f64> {
    if target <= 0.0 {
        return Some(t0);
    }
    let mut lo = t0;
    let mut hi = None;
    for k in 0..=60 {
        let t = t0 + 2f64.powi(k);
        if c.cumulative(t0, t) >= target {
            hi = Some(t);
            break;
        }
        lo = t;
    }
    let mut hi = hi?;
    // lo stays infeasible, hi feasible: converges on the infimum even
    // when c vanishes on intervals.
    for _ in 0..400 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if c.cumulative(t0, mid) >= target {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Some(hi)
}

/// Settling-time certificate for initial Lyapunov value `v0` at `t0`.
pub fn settling_time_bound(rate: &RateSpec, t0: f64, v0: f64) -> Result<SettlingCertificate> {
    let g_v0 = rate.g.barrier(v0)?;
    let tail_mass = rate.c.tail(t0);
    let t_bound = if v0 == 0.0 {
        SettlingTime::Finite(t0)
    } else if tail_mass <= g_v0 {
        SettlingTime::Unbounded
    } else {
        match first_reach(&rate.c, t0, g_v0) {
            Some(t) => SettlingTime::Finite(t),
            None => SettlingTime::Unbounded,
        }
    };
    Ok(SettlingCertificate {
        t0,
        v0,
        g_v0,
        t_bound,
        tail_mass,
    })
}

/// `φ(t)` solving `φ' = -c(t) g(φ)`, `φ(t0) = v0`, extended by zero after
/// it reaches the origin.
pub fn comparison_solution(rate: &RateSpec, t0: f64, v0: f64, t: f64) -> Result<f64> {
    if t <= t0 || v0 == 0.0 {
        return Ok(if t <= t0 { v0 } else { 0.0 });
    }
    let spent = rate.c.cumulative(t0, t);
    match rate.g {
        ComparisonNonlinearity::Power { alpha } => {
            let p = 1.0 - alpha;
            let base = v0.powf(p) - p * spent;
            Ok(if base <= 0.0 { 0.0 } else { base.powf(1.0 / p) })
        }
        _ => {
            let y = rate.g.barrier(v0)? - spent;
            rate.g.inverse_barrier(y)
        }
    }
}

/// `φ(t)` through `G⁻¹(G(v0) - ∫c)` on the quadrature path, regardless of
/// whether a closed form exists.
pub fn comparison_solution_numeric(rate: &RateSpec, t0: f64, v0: f64, t: f64) -> Result<f64> {
    if t <= t0 || v0 == 0.0 {
        return Ok(if t <= t0 { v0 } else { 0.0 });
    }
    let y = rate.g.barrier_quadrature(v0)? - rate.c.cumulative(t0, t);
    rate.g.inverse_barrier_numeric(y)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sqrt_rate(c: GainFunction) -> RateSpec {
        RateSpec::new(c, ComparisonNonlinearity::power(0.5).unwrap()).unwrap()
    }

    #[test]
    fn unit_gain_settles_at_two() {
        let cert = settling_time_bound(&sqrt_rate(GainFunction::constant(1.0)), 0.0, 1.0).unwrap();
        let t = cert.t_bound.finite().unwrap();
        assert!((t - 2.0).abs() < 1e-12);
        assert_eq!(cert.g_v0, 2.0);
    }

    #[test]
    fn zero_value_settles_immediately() {
        let cert = settling_time_bound(&sqrt_rate(GainFunction::exp(0.2, -0.5)), 3.0, 0.0).unwrap();
        assert_eq!(cert.t_bound, SettlingTime::Finite(3.0));
    }

    #[test]
    fn exponential_gain_settling_time() {
        let cert = settling_time_bound(&sqrt_rate(GainFunction::exp(0.2, -0.5)), 0.0, 0.01).unwrap();
        let t = cert.t_bound.finite().unwrap();
        assert!((t - 2.0 * 2f64.ln()).abs() < 1e-10, "{t}");
        assert!((cert.tail_mass - 0.4).abs() < 1e-15);
    }

    #[test]
    fn insufficient_tail_is_unbounded() {
        let cert = settling_time_bound(&sqrt_rate(GainFunction::exp(0.2, -0.5)), 0.0, 1.0).unwrap();
        assert_eq!(cert.t_bound, SettlingTime::Unbounded);
        let json = serde_json::to_value(&cert).unwrap();
        assert_eq!(json["T_bound"], "unbounded");
    }

    #[test]
    fn flat_gain_returns_infimum() {
        // c = 1 on [0,1], 0 on [1,3], 1 on [3,10]: G(1) = 2 is reached at t = 4
        let c = GainFunction::steps(vec![0.0, 1.0, 3.0, 10.0], vec![1.0, 0.0, 1.0]).unwrap();
        let cert = settling_time_bound(&sqrt_rate(c), 0.0, 1.0).unwrap();
        assert!((cert.t_bound.finite().unwrap() - 4.0).abs() < 1e-12);
        // target hit exactly at the start of a flat stretch: infimum is its left end
        let c = GainFunction::steps(vec![0.0, 2.0, 3.0, 10.0], vec![1.0, 0.0, 1.0]).unwrap();
        let cert = settling_time_bound(&sqrt_rate(c), 0.0, 1.0).unwrap();
        assert!((cert.t_bound.finite().unwrap() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn comparison_solution_examples() {
        let r = sqrt_rate(GainFunction::constant(1.0));
        assert!((comparison_solution(&r, 0.0, 1.0, 1.0).unwrap() - 0.25).abs() < 1e-15);
        assert_eq!(comparison_solution(&r, 0.0, 1.0, 3.0).unwrap(), 0.0);
        assert_eq!(comparison_solution(&r, 0.0, 0.0, 0.5).unwrap(), 0.0);
        let n = comparison_solution_numeric(&r, 0.0, 1.0, 1.0).unwrap();
        assert!((n - 0.25).abs() < 1e-12, "{n}");
    }
}
