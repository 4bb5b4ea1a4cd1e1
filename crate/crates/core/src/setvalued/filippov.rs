use std::fmt;
use std::sync::Arc;

use super::convex::Interval;
use crate::error::{Error, Result};

/// A declared discontinuity of a monotone function.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Jump {
    pub at: f64,
    pub left: f64,
    pub right: f64,
}

/// Where one-sided limits come from.
#[derive(Clone, Debug, PartialEq)]
pub enum JumpInfo {
    /// The function is continuous everywhere except at these points.
    Declared(Vec<Jump>),
    /// Nothing known: limits are estimated by sampling.
    Unknown,
}

/// Nondecreasing scalar function with optional jump metadata.
#[derive(Clone)]
pub struct MonotoneScalarFunction {
    eval: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    jumps: JumpInfo,
}

impl fmt::Debug for MonotoneScalarFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MonotoneScalarFunction")
            .field("jumps", &self.jumps)
            .finish_non_exhaustive()
    }
}

impl MonotoneScalarFunction {
    pub fn new(eval: impl Fn(f64) -> f64 + Send + Sync + 'static, jumps: Vec<Jump>) -> Result<Self> {
        for j in &jumps {
            if !(j.left <= j.right) {
                return Err(Error::InvalidFunction(format!(
                    "jump at {} has left limit {} above right limit {}",
                    j.at, j.left, j.right
                )));
            }
            let v = eval(j.at);
            if !(j.left <= v && v <= j.right) {
                return Err(Error::InvalidFunction(format!(
                    "value {v} at jump {} lies outside [{}, {}]",
                    j.at, j.left, j.right
                )));
            }
        }
        Ok(Self {
            eval: Arc::new(eval),
            jumps: JumpInfo::Declared(jumps),
        })
    }

    pub fn continuous(eval: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        Self {
            eval: Arc::new(eval),
            jumps: JumpInfo::Declared(Vec::new()),
        }
    }

    /// A function whose discontinuities are not declared.
    pub fn estimated(eval: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        Self {
            eval: Arc::new(eval),
            jumps: JumpInfo::Unknown,
        }
    }

    /// `scale · sign(x)` with the jump at zero declared.
    pub fn sign(scale: f64) -> Self {
        let s = scale.abs();
        Self {
            eval: Arc::new(move |x: f64| {
                if x > 0.0 {
                    s
                } else if x < 0.0 {
                    -s
                } else {
                    0.0
                }
            }),
            jumps: JumpInfo::Declared(vec![Jump {
                at: 0.0,
                left: -s,
                right: s,
            }]),
        }
    }

    pub fn eval(&self, x: f64) -> f64 {
        (self.eval)(x)
    }

    pub fn jumps(&self) -> &JumpInfo {
        &self.jumps
    }

    /// Checks monotonicity on sorted samples; returns the first offending pair.
    pub fn check_monotone(&self, xs: &[f64]) -> Option<(f64, f64)> {
        let mut sorted = xs.to_vec();
        sorted.sort_by(f64::total_cmp);
        sorted
            .windows(2)
            .find(|w| self.eval(w[0]) > self.eval(w[1]))
            .map(|w| (w[0], w[1]))
    }
}

/// Limit of `f(x ± hₖ)` for `hₖ = 10⁻³ … 10⁻¹²`, with one Richardson step
/// under a first-order model in `h`.
fn estimate_limit(f: &MonotoneScalarFunction, x: f64, side: f64) -> f64 {
    let samples: Vec<(f64, f64)> = (3..=12)
        .map(|k| {
            let h = 10f64.powi(-k) * x.abs().max(1.0);
            (h, f.eval(x + side * h))
        })
        .collect();
    let (h1, f1) = samples[samples.len() - 2];
    let (h2, f2) = samples[samples.len() - 1];
    f2 + (f2 - f1) * h2 / (h1 - h2)
}

/// Filippov regularization `[f(x⁻), f(x⁺)]` of a nondecreasing function.
pub fn filippov_interval(f: &MonotoneScalarFunction, x: f64) -> Interval {
    let fx = f.eval(x);
    match &f.jumps {
        JumpInfo::Declared(jumps) => match jumps.iter().find(|j| j.at == x) {
            Some(j) => Interval::new(j.left, j.right),
            None => Interval::point(fx),
        },
        JumpInfo::Unknown => {
            let snap = 1e-9 * (1.0 + fx.abs());
            let mut lo = estimate_limit(f, x, -1.0);
            let mut hi = estimate_limit(f, x, 1.0);
            if (lo - fx).abs() <= snap {
                lo = fx;
            }
            if (hi - fx).abs() <= snap {
                hi = fx;
            }
            Interval::new(lo.min(fx), hi.max(fx))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sign_at_zero() {
        let s = MonotoneScalarFunction::sign(1.0);
        assert_eq!(filippov_interval(&s, 0.0), Interval::new(-1.0, 1.0));
        assert_eq!(filippov_interval(&s, 0.3), Interval::point(1.0));
        let est = MonotoneScalarFunction::estimated(|x: f64| if x > 0.0 { 1.0 } else if x < 0.0 { -1.0 } else { 0.0 });
        assert_eq!(filippov_interval(&est, 0.0), Interval::new(-1.0, 1.0));
    }

    #[test]
    fn continuous_point_is_degenerate() {
        let f = MonotoneScalarFunction::estimated(|x: f64| x * x * x);
        for x in [-2.0, -0.1, 0.0, 0.7, 3.0] {
            let i = filippov_interval(&f, x);
            assert!(i.is_degenerate(), "{x}: {i:?}");
            assert_eq!(i.lo, x * x * x);
        }
    }

    #[test]
    fn floor_one_sided_limits() {
        let f = MonotoneScalarFunction::estimated(f64::floor);
        assert_eq!(filippov_interval(&f, 2.0), Interval::new(1.0, 2.0));
    }

    #[test]
    fn jump_metadata_validated() {
        assert!(MonotoneScalarFunction::new(|x| x, vec![Jump { at: 0.0, left: 1.0, right: 0.0 }]).is_err());
        assert!(MonotoneScalarFunction::new(|x| x + 5.0, vec![Jump { at: 0.0, left: 0.0, right: 1.0 }]).is_err());
    }
}
