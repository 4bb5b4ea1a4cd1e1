use serde::{Deserialize, Serialize};

use crate::comparison::GainFunction;
use crate::error::{Error, Result};
use crate::setvalued::{filippov_interval, Interval, Jump, MonotoneScalarFunction};

/// Nondecreasing odd profile of one neuron.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Shape {
    /// `s(x) = x`
    Linear,
    /// `s(x) = sign(x) |x|^exponent`, `0 ≤ exponent ≤ 1`; a sign switch
    /// when the exponent is zero.
    SignPower { exponent: f64 },
    /// `s(x) = x + jump · sign(x)` for `|x| ≥ at`, else `x`.
    JumpLinear { at: f64, jump: f64 },
}

impl Shape {
    pub fn validate(&self) -> Result<()> {
        match self {
            Self::Linear => Ok(()),
            Self::SignPower { exponent } if (0.0..=1.0).contains(exponent) => Ok(()),
            Self::SignPower { exponent } => Err(Error::InvalidFunction(format!(
                "sign-power exponent must lie in [0, 1], got {exponent}"
            ))),
            Self::JumpLinear { at, jump } if *at > 0.0 && *jump >= 0.0 && at.is_finite() && jump.is_finite() => Ok(()),
            Self::JumpLinear { at, jump } => Err(Error::InvalidFunction(format!(
                "jump-linear needs at > 0 and jump >= 0, got ({at}, {jump})"
            ))),
        }
    }

    pub fn eval(&self, x: f64) -> f64 {
        match self {
            Self::Linear => x,
            Self::SignPower { exponent } => {
                if x == 0.0 {
                    0.0
                } else if *exponent == 0.0 {
                    x.signum()
                } else {
                    x.signum() * x.abs().powf(*exponent)
                }
            }
            Self::JumpLinear { at, jump } => {
                if x.abs() >= *at {
                    x + jump * x.signum()
                } else {
                    x
                }
            }
        }
    }

    /// `(k0, k1)` with `|s(x)| ≤ k0 + k1 |x|`.
    pub fn linear_growth(&self) -> (f64, f64) {
        match self {
            Self::Linear => (0.0, 1.0),
            Self::SignPower { .. } => (1.0, 1.0),
            Self::JumpLinear { jump, .. } => (*jump, 1.0),
        }
    }

    pub fn monotone(&self) -> MonotoneScalarFunction {
        let s = self.clone();
        let jumps = match self {
            Self::Linear => Vec::new(),
            Self::SignPower { exponent } if *exponent == 0.0 => vec![Jump {
                at: 0.0,
                left: -1.0,
                right: 1.0,
            }],
            Self::SignPower { .. } => Vec::new(),
            Self::JumpLinear { at, jump } => vec![
                Jump {
                    at: -at,
                    left: -at - jump,
                    right: -at,
                },
                Jump {
                    at: *at,
                    left: *at,
                    right: at + jump,
                },
            ],
        };
        MonotoneScalarFunction::new(move |x| s.eval(x), jumps).expect("shapes declare consistent jumps")
    }
}

/// `gain(t) · shape(x)` with a nonnegative gain.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Neuron {
    pub gain: GainFunction,
    pub shape: Shape,
}

impl Neuron {
    pub fn new(gain: GainFunction, shape: Shape) -> Self {
        Self { gain, shape }
    }

    pub fn validate(&self) -> Result<()> {
        self.gain.validate()?;
        self.shape.validate()
    }

    pub fn eval(&self, t: f64, x: f64) -> f64 {
        self.gain.eval(t) * self.shape.eval(x)
    }

    /// Filippov interval of `gain(t) · shape` at `x`.
    pub(crate) fn interval(&self, profile: &MonotoneScalarFunction, t: f64, x: f64) -> Interval {
        let k = self.gain.eval(t);
        let i = filippov_interval(profile, x);
        Interval::new(k * i.lo, k * i.hi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn jump_linear_intervals() {
        let s = Shape::JumpLinear { at: 0.2, jump: 0.1 };
        let m = s.monotone();
        assert_eq!(filippov_interval(&m, 0.2), Interval::new(0.2, 0.30000000000000004));
        assert_eq!(filippov_interval(&m, -0.2), Interval::new(-0.30000000000000004, -0.2));
        assert_eq!(filippov_interval(&m, 0.1), Interval::point(0.1));
        assert!(m.check_monotone(&[-1.0, -0.2, -0.1, 0.0, 0.2, 0.5]).is_none());
    }

    #[test]
    fn sign_power_zero_is_sign() {
        let s = Shape::SignPower { exponent: 0.0 };
        assert_eq!(s.eval(-3.0), -1.0);
        assert_eq!(filippov_interval(&s.monotone(), 0.0), Interval::new(-1.0, 1.0));
        assert!(Shape::SignPower { exponent: 2.0 }.validate().is_err());
    }
}
