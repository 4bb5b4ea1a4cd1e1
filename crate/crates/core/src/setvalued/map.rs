use std::fmt;
use std::sync::Arc;

use super::convex::ConvexSet;
use crate::comparison::GainFunction;
use crate::error::{Error, Result};
use crate::linalg::norm;

type SetEvaluator = dyn Fn(f64, &[f64]) -> Result<ConvexSet> + Send + Sync;

/// Set-valued right-hand side `F(t, x)` with compact convex values and a
/// linear growth envelope `|F(t, x)| ≤ μ(t)(1 + |x|)`.
///
/// Measurability in `t` and upper semicontinuity in `x` are caller
/// contracts; neither can be verified from point evaluations.
#[derive(Clone)]
pub struct CaratheodoryMap {
    dim: usize,
    eval: Arc<SetEvaluator>,
    growth: GainFunction,
    equilibrium: bool,
}

impl fmt::Debug for CaratheodoryMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CaratheodoryMap")
            .field("dim", &self.dim)
            .field("growth", &self.growth)
            .field("equilibrium", &self.equilibrium)
            .finish_non_exhaustive()
    }
}

impl CaratheodoryMap {
    /// `equilibrium` asserts `0 ∈ F(t, 0)`.
    pub fn new(
        dim: usize,
        growth: GainFunction,
        equilibrium: bool,
        eval: impl Fn(f64, &[f64]) -> Result<ConvexSet> + Send + Sync + 'static,
    ) -> Result<Self> {
        growth.validate()?;
        Ok(Self {
            dim,
            eval: Arc::new(eval),
            growth,
            equilibrium,
        })
    }

    /// Single-valued right-hand side `{f(t, x)}`.
    pub fn single_valued(
        dim: usize,
        growth: GainFunction,
        equilibrium: bool,
        f: impl Fn(f64, &[f64]) -> Vec<f64> + Send + Sync + 'static,
    ) -> Result<Self> {
        Self::new(dim, growth, equilibrium, move |t, x| Ok(ConvexSet::singleton(f(t, x))))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn growth(&self) -> &GainFunction {
        &self.growth
    }

    pub fn has_equilibrium(&self) -> bool {
        self.equilibrium
    }

    pub fn value(&self, t: f64, x: &[f64]) -> Result<ConvexSet> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: x.len(),
            });
        }
        let s = (self.eval)(t, x)?;
        if s.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: s.dim(),
            });
        }
        Ok(s)
    }

    /// `sup |F(t,x)| - μ(t)(1 + |x|)`; nonpositive when the envelope holds.
    pub fn growth_excess(&self, t: f64, x: &[f64]) -> Result<f64> {
        let s = self.value(t, x)?;
        Ok(s.sup_norm()? - self.growth.eval(t) * (1.0 + norm(x)))
    }

    /// Largest `dist(0, F(t, 0))` over the sampled times.
    pub fn equilibrium_residual(&self, times: &[f64]) -> Result<f64> {
        let zero = vec![0.0; self.dim];
        let mut worst = 0.0f64;
        for &t in times {
            worst = worst.max(self.value(t, &zero)?.distance(&zero)?);
        }
        Ok(worst)
    }
}
