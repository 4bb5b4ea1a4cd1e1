use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::comparison::GainFunction;
use crate::error::{Error, Result};
use crate::linalg::{norm, scale};

type ValueFn = dyn Fn(f64, &[f64]) -> f64 + Send + Sync;
type GradientFn = dyn Fn(f64, &[f64]) -> (f64, Vec<f64>) + Send + Sync;
type RadialFn = dyn Fn(f64) -> f64 + Send + Sync;

/// Candidate Lyapunov function `V(t, x) ≥ 0`.
#[derive(Clone)]
pub struct LyapunovCandidate {
    dim: usize,
    value: Arc<ValueFn>,
    gradient: Option<Arc<GradientFn>>,
    radial_bound: Option<Arc<RadialFn>>,
    positive_definite: bool,
    lipschitz: bool,
    domain_radius: Option<f64>,
}

impl fmt::Debug for LyapunovCandidate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LyapunovCandidate")
            .field("dim", &self.dim)
            .field("has_gradient", &self.gradient.is_some())
            .field("positive_definite", &self.positive_definite)
            .field("lipschitz", &self.lipschitz)
            .field("domain_radius", &self.domain_radius)
            .finish_non_exhaustive()
    }
}

impl LyapunovCandidate {
    pub fn new(dim: usize, value: impl Fn(f64, &[f64]) -> f64 + Send + Sync + 'static) -> Self {
        Self {
            dim,
            value: Arc::new(value),
            gradient: None,
            radial_bound: None,
            positive_definite: false,
            lipschitz: false,
            domain_radius: None,
        }
    }

    /// Gradient `(V_t, V_x)`, valid away from `x = 0`.
    pub fn with_gradient(mut self, grad: impl Fn(f64, &[f64]) -> (f64, Vec<f64>) + Send + Sync + 'static) -> Self {
        self.gradient = Some(Arc::new(grad));
        self
    }

    /// Increasing `p` with `V(t, x) ≥ p(|x|)`.
    pub fn with_radial_bound(mut self, p: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        self.radial_bound = Some(Arc::new(p));
        self
    }

    pub fn positive_definite(mut self, flag: bool) -> Self {
        self.positive_definite = flag;
        self
    }

    pub fn lipschitz(mut self, flag: bool) -> Self {
        self.lipschitz = flag;
        self
    }

    /// Restricts `V` to the open ball of the given radius.
    pub fn on_ball(mut self, radius: f64) -> Self {
        self.domain_radius = Some(radius);
        self
    }

    /// `V(t, x) = |x|²`
    pub fn norm_squared(dim: usize) -> Self {
        Self::new(dim, |_, x| x.iter().map(|v| v * v).sum())
            .with_gradient(|_, x| (0.0, scale(x, 2.0)))
            .with_radial_bound(|r| r * r)
            .positive_definite(true)
            .lipschitz(true)
    }

    /// `V(t, x) = |x|`
    pub fn norm(dim: usize) -> Self {
        Self::new(dim, |_, x| norm(x))
            .with_gradient(|_, x| {
                let r = norm(x);
                (0.0, scale(x, 1.0 / r))
            })
            .with_radial_bound(|r| r)
            .positive_definite(true)
            .lipschitz(true)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_lipschitz(&self) -> bool {
        self.lipschitz
    }

    pub fn is_positive_definite(&self) -> bool {
        self.positive_definite
    }

    pub fn has_gradient(&self) -> bool {
        self.gradient.is_some()
    }

    pub fn domain_radius(&self) -> Option<f64> {
        self.domain_radius
    }

    pub fn in_domain(&self, x: &[f64]) -> bool {
        self.domain_radius.is_none_or(|r| norm(x) < r)
    }

    pub fn value(&self, t: f64, x: &[f64]) -> f64 {
        (self.value)(t, x)
    }

    /// `(V_t, V_x)` when a gradient is supplied and `x ≠ 0`.
    pub fn gradient(&self, t: f64, x: &[f64]) -> Option<(f64, Vec<f64>)> {
        if x.iter().all(|v| *v == 0.0) {
            return None;
        }
        self.gradient.as_ref().map(|g| g(t, x))
    }

    pub fn radial_bound(&self, r: f64) -> Option<f64> {
        self.radial_bound.as_ref().map(|p| p(r))
    }

    /// Checks `V(t,0) = 0`, positivity and the radial bound on samples.
    pub fn check_invariants(&self, times: &[f64], points: &[Vec<f64>], tol: f64) -> Result<CandidateReport> {
        let zero = vec![0.0; self.dim];
        let mut report = CandidateReport::default();
        for &t in times {
            let v0 = self.value(t, &zero);
            report.max_value_at_origin = report.max_value_at_origin.max(v0.abs());
            for x in points {
                if x.len() != self.dim {
                    return Err(Error::DimensionMismatch {
                        expected: self.dim,
                        found: x.len(),
                    });
                }
                if !self.in_domain(x) || norm(x) == 0.0 {
                    continue;
                }
                let v = self.value(t, x);
                if self.positive_definite && !(v > 0.0) && report.positivity_witness.is_none() {
                    report.positivity_witness = Some((t, x.clone()));
                }
                if let Some(p) = self.radial_bound(norm(x)) {
                    if v < p - tol && report.radial_witness.is_none() {
                        report.radial_witness = Some((t, x.clone()));
                    }
                }
            }
        }
        report.pass = report.max_value_at_origin <= tol
            && report.positivity_witness.is_none()
            && report.radial_witness.is_none();
        Ok(report)
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct CandidateReport {
    pub pass: bool,
    pub max_value_at_origin: f64,
    pub positivity_witness: Option<(f64, Vec<f64>)>,
    pub radial_witness: Option<(f64, Vec<f64>)>,
}

/// Rate function `W(t, x)` with growth envelope `|W| ≤ k(t)(1 + |x|)`.
#[derive(Clone)]
pub struct RateFunctionW {
    eval: Arc<ValueFn>,
    growth: GainFunction,
}

impl fmt::Debug for RateFunctionW {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RateFunctionW")
            .field("growth", &self.growth)
            .finish_non_exhaustive()
    }
}

impl RateFunctionW {
    pub fn new(growth: GainFunction, eval: impl Fn(f64, &[f64]) -> f64 + Send + Sync + 'static) -> Self {
        Self {
            eval: Arc::new(eval),
            growth,
        }
    }

    /// `W(t, x) = c(t) g(V(t, x))`
    pub fn from_rate(v: &LyapunovCandidate, rate: &crate::comparison::RateSpec, growth: GainFunction) -> Self {
        let v = v.clone();
        let rate = rate.clone();
        Self::new(growth, move |t, x| rate.decay(t, v.value(t, x)))
    }

    pub fn eval(&self, t: f64, x: &[f64]) -> f64 {
        (self.eval)(t, x)
    }

    pub fn growth_excess(&self, t: f64, x: &[f64]) -> f64 {
        self.eval(t, x).abs() - self.growth.eval(t) * (1.0 + norm(x))
    }
}
