use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quadrature::singular_barrier_integral;

/// Comparison nonlinearity `g` with `g(0) = 0`, strictly increasing, and
/// `∫₀ᵇ 1/g < ∞`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ComparisonNonlinearity {
    /// `g(v) = v^alpha`, `alpha ∈ (0, 1)`.
    Power { alpha: f64 },
    /// Monotone samples `(v[i], g[i])` with `v[0] > 0`. Below `v[0]` the
    /// function is `g[0]·(v/v[0])^exponent`; between samples it is linear;
    /// past the last sample it continues with the last slope.
    Table {
        v: Vec<f64>,
        g: Vec<f64>,
        exponent: f64,
    },
}

impl ComparisonNonlinearity {
    pub fn power(alpha: f64) -> Result<Self> {
        let g = Self::Power { alpha };
        g.validate()?;
        Ok(g)
    }

    pub fn table(v: Vec<f64>, g: Vec<f64>, exponent: f64) -> Result<Self> {
        let g = Self::Table { v, g, exponent };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            Self::Power { alpha } => {
                if !(*alpha > 0.0 && *alpha < 1.0) {
                    return Err(Error::InvalidFunction(format!(
                        "power nonlinearity needs alpha in (0, 1), got {alpha}"
                    )));
                }
            }
            Self::Table { v, g, exponent } => {
                if v.is_empty() || v.len() != g.len() {
                    return Err(Error::InvalidFunction(
                        "tabulated g needs matching nonempty v and g samples".into(),
                    ));
                }
                if !(v[0] > 0.0) || !v.windows(2).all(|w| w[0] < w[1]) {
                    return Err(Error::InvalidFunction(
                        "tabulated g abscissae must be positive and strictly increasing".into(),
                    ));
                }
                if !(g[0] > 0.0) || !g.windows(2).all(|w| w[0] < w[1]) {
                    return Err(Error::InvalidFunction(
                        "tabulated g must be positive and strictly increasing".into(),
                    ));
                }
                if v.iter().chain(g).any(|x| !x.is_finite()) {
                    return Err(Error::InvalidFunction("tabulated g must be finite".into()));
                }
                if !(*exponent > 0.0 && *exponent < 1.0) {
                    return Err(Error::InvalidFunction(format!(
                        "exponent bound near 0 must lie in (0, 1) for 1/g to be integrable, got {exponent}"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn eval(&self, v: f64) -> f64 {
        if v <= 0.0 {
            return 0.0;
        }
        match self {
            Self::Power { alpha } => v.powf(*alpha),
            Self::Table { v: vs, g, exponent } => {
                if v <= vs[0] {
                    return g[0] * (v / vs[0]).powf(*exponent);
                }
                let last = vs.len() - 1;
                if last == 0 {
                    return g[0] * (v / vs[0]).powf(*exponent);
                }
                let i = (vs.partition_point(|&x| x <= v) - 1).min(last - 1);
                let slope = (g[i + 1] - g[i]) / (vs[i + 1] - vs[i]);
                g[i] + slope * (v - vs[i])
            }
        }
    }

    /// `(β, m)` with `g(v) ≥ m·v^β` near zero.
    pub fn exponent_bound(&self) -> (f64, f64) {
        match self {
            Self::Power { alpha } => (*alpha, 1.0),
            Self::Table { v, g, exponent } => (*exponent, g[0] / v[0].powf(*exponent)),
        }
    }

    fn breakpoints(&self) -> &[f64] {
        match self {
            Self::Power { .. } => &[],
            Self::Table { v, .. } => v,
        }
    }

    /// `G(v) = ∫₀ᵛ 1/g`. Exact for the power law, quadrature otherwise.
    pub fn barrier(&self, v: f64) -> Result<f64> {
        match self {
            Self::Power { alpha } => {
                check_arg(v)?;
                Ok(v.powf(1.0 - alpha) / (1.0 - alpha))
            }
            Self::Table { .. } => self.barrier_quadrature(v),
        }
    }

    /// `G(v)` through the singular quadrature path, for any variant.
    pub fn barrier_quadrature(&self, v: f64) -> Result<f64> {
        check_arg(v)?;
        let (beta, _) = self.exponent_bound();
        singular_barrier_integral(|s| self.eval(s), v, beta, self.breakpoints())
    }

    /// `G⁻¹(y)`: closed form for the power law, bisection otherwise.
    pub fn inverse_barrier(&self, y: f64) -> Result<f64> {
        match self {
            Self::Power { alpha } => {
                if y <= 0.0 {
                    return Ok(0.0);
                }
                let p = 1.0 - alpha;
                Ok((p * y).powf(1.0 / p))
            }
            Self::Table { .. } => self.inverse_barrier_numeric(y),
        }
    }

    /// `G⁻¹(y)` by bracketing and bisection on the quadrature path.
    pub fn inverse_barrier_numeric(&self, y: f64) -> Result<f64> {
        if y <= 0.0 {
            return Ok(0.0);
        }
        let mut lo = 0.0;
        let mut hi = 1.0;
        let mut expansions = 0;
        while self.barrier_quadrature(hi)? < y {
            lo = hi;
            hi *= 2.0;
            expansions += 1;
            if expansions > 1000 {
                return Err(Error::InvalidFunction(format!(
                    "G stays below {y} on every bracket"
                )));
            }
        }
        for _ in 0..2000 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if self.barrier_quadrature(mid)? < y {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Ok(0.5 * (lo + hi))
    }
}

fn check_arg(v: f64) -> Result<()> {
    if !(v >= 0.0) || !v.is_finite() {
        return Err(Error::InvalidFunction(format!(
            "barrier integral needs a finite v >= 0, got {v}"
        )));
    }
    Ok(())
}
