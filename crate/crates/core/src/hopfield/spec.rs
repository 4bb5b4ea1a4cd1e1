use serde::{Deserialize, Serialize};

use super::shape::{Neuron, Shape};
use crate::certifier::{geometric, GridSpec, TimeSamples};
use crate::comparison::GainFunction;
use crate::error::{Error, Result};
use crate::linalg::{dot, norm, Matrix};
use crate::setvalued::{vertices, product_box};

/// Hopfield network `x' = -h(t, x) + B(t) g(t, x) + I(t)` with
/// discontinuous activations, plus the constants of its stability analysis.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HopfieldSpec {
    pub n: usize,
    /// Self-inhibition `h_i(t, x_i)`.
    pub h: Vec<Neuron>,
    /// Activations `g_i(t, x_i)`.
    pub g: Vec<Neuron>,
    /// `B(t) = weight_scale(t) · weights`.
    pub weights: Matrix,
    pub weight_scale: GainFunction,
    pub input: Vec<f64>,
    pub alpha: f64,
    pub delta: f64,
    pub rho: f64,
    /// Lower envelope in `a(t)|x|^{2α} ≤ ⟨x, h(t, x)⟩`.
    pub a: GainFunction,
    /// Upper envelope in `⟨x, B(t) g(t, x)⟩ ≤ b(t)|x|²`.
    pub b: GainFunction,
    /// Assumptions are sampled on `[0, check_horizon]`; see
    /// [`HopfieldSpec::horizon`] for the default.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub check_horizon: Option<f64>,
}

impl HopfieldSpec {
    /// Two neurons with sign self-inhibition of strength `0.5`, linear
    /// activations with a `0.1` jump at `|x_i| = 0.5` (outside `B(0, ρ)`),
    /// `α = 1/2`, `δ = 0.1`, `ρ = 0.3`; `⟨x, Bx⟩ = 0.3 |x|²`.
    pub fn reference() -> Self {
        let weights = Matrix::from_rows(vec![vec![0.3, 0.2], vec![-0.2, 0.3]]).expect("rectangular");
        let sign = Neuron::new(GainFunction::constant(0.5), Shape::SignPower { exponent: 0.0 });
        let act = Neuron::new(GainFunction::constant(1.0), Shape::JumpLinear { at: 0.5, jump: 0.1 });
        Self {
            n: 2,
            h: vec![sign.clone(), sign],
            g: vec![act.clone(), act],
            weights,
            weight_scale: GainFunction::constant(1.0),
            input: vec![0.0, 0.0],
            alpha: 0.5,
            delta: 0.1,
            rho: 0.3,
            a: GainFunction::constant(0.5),
            b: GainFunction::constant(0.3),
            check_horizon: None,
        }
    }

    /// One neuron: `h = a sign(x)|x|^{2α-1}`, `g = x`, `B = (weight)`.
    pub fn scalar(alpha: f64, delta: f64, rho: f64, a: f64, weight: f64, b: f64) -> Self {
        Self {
            n: 1,
            h: vec![Neuron::new(
                GainFunction::constant(a),
                Shape::SignPower {
                    exponent: 2.0 * alpha - 1.0,
                },
            )],
            g: vec![Neuron::new(GainFunction::constant(1.0), Shape::Linear)],
            weights: Matrix::from_rows(vec![vec![weight]]).expect("1x1"),
            weight_scale: GainFunction::constant(1.0),
            input: vec![0.0],
            alpha,
            delta,
            rho,
            a: GainFunction::constant(a),
            b: GainFunction::constant(b),
            check_horizon: None,
        }
    }

    /// `check_horizon`, or `max(1, 2 T)` with `T` the settling bound of the
    /// largest initial value `v0 ≤ sup V(0, B(0, ρ))` whose barrier stays
    /// below 90% of the tail mass `δ / (1 - α)`.
    pub fn horizon(&self) -> f64 {
        if let Some(h) = self.check_horizon {
            return h;
        }
        let a = self.alpha;
        let tail = self.delta / (1.0 - a);
        // G(v) = v^{1-α} / (1-α) for g = v^α
        let sup_v = {
            let r = self.rho;
            r * (r - (-r.powf(a - 1.0)).exp())
        };
        let g = sup_v.max(0.0).powf(1.0 - a) / (1.0 - a);
        let target = g.min(0.9 * tail);
        // δ/(1-α) (1 - e^{(α-1)T}) = target
        let t = -(1.0 - target / tail).ln() / (1.0 - a);
        if t.is_finite() {
            1f64.max(2.0 * t)
        } else {
            1.0
        }
    }

    pub fn weights_at(&self, t: f64) -> Matrix {
        self.weights.scaled(self.weight_scale.eval(t))
    }

    /// Structural checks: dimensions, parameter ranges, function validity.
    pub fn validate_shape(&self) -> Result<()> {
        let n = self.n;
        for (what, len) in [("h", self.h.len()), ("g", self.g.len()), ("input", self.input.len())] {
            if len != n {
                return Err(Error::Config(format!("{what} has {len} entries for n = {n}")));
            }
        }
        if self.weights.rows() != n || self.weights.cols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: self.weights.rows().max(self.weights.cols()),
            });
        }
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(Error::Config(format!("alpha must lie in (0, 1), got {}", self.alpha)));
        }
        if !(self.delta > 0.0 && self.delta.is_finite()) {
            return Err(Error::Config(format!("delta must be positive, got {}", self.delta)));
        }
        if !(self.rho > 0.0 && self.rho < 1.0) {
            return Err(Error::Config(format!("rho must lie in (0, 1), got {}", self.rho)));
        }
        if self.check_horizon.is_some_and(|h| !(h >= 0.0 && h.is_finite())) {
            return Err(Error::Config("check_horizon must be finite and >= 0".into()));
        }
        for neuron in self.h.iter().chain(&self.g) {
            neuron.validate()?;
        }
        self.weight_scale.validate()?;
        self.a.validate()?;
        self.b.validate()
    }

    /// Samples used to check the standing assumptions: 11 times on
    /// `[0, check_horizon]` and a log-radial grid inside `B(0, ρ)`.
    pub fn validation_grid(&self) -> GridSpec {
        GridSpec::log_radial(
            self.n,
            1e-4 * self.rho,
            self.rho * (1.0 - 1e-9),
            24,
            32 * self.n,
            TimeSamples {
                start: 0.0,
                end: self.horizon(),
                count: 11,
            },
        )
    }

    /// Checks the standing assumptions on samples; the error names the
    /// first failing inequality and its witness.
    pub fn validate(&self) -> Result<()> {
        self.validate_shape()?;
        let tol = 1e-12;
        let times = TimeSamples {
            start: 0.0,
            end: self.horizon(),
            count: 11,
        }
        .points();
        let zero = vec![0.0; self.n];
        let violation = |inequality: &str, t: f64, x: &[f64], lhs: f64, rhs: f64| Error::AssumptionViolation {
            inequality: inequality.to_string(),
            t,
            x: x.to_vec(),
            lhs,
            rhs,
        };

        for &t in &times {
            let i_norm = norm(&self.input);
            if i_norm > tol {
                return Err(violation("I(t) = 0", t, &zero, i_norm, 0.0));
            }
            let g0: Vec<f64> = self.g.iter().map(|g| g.eval(t, 0.0)).collect();
            let bg0 = self.weights_at(t).mul_vec(&g0);
            let resid = norm(&bg0.iter().zip(&self.input).map(|(a, b)| a + b).collect::<Vec<_>>());
            if resid > tol {
                return Err(violation("B(t)g(t,0) = -I(t)", t, &zero, resid, 0.0));
            }
            let h0 = norm(&self.h.iter().map(|h| h.eval(t, 0.0)).collect::<Vec<_>>());
            if h0 > tol {
                return Err(violation("h(t,0) = 0", t, &zero, h0, 0.0));
            }
            let lhs = self.a.eval(t) - self.b.eval(t) * self.rho.powf(2.0 * (1.0 - self.alpha));
            if lhs < self.delta - tol {
                return Err(violation("a(t) - b(t) rho^(2(1-alpha)) >= delta", t, &zero, lhs, self.delta));
            }
        }

        // V > 0 on the punctured ball; fails for α well above 1/2 unless ρ is tiny
        for r in geometric(1e-9 * self.rho, self.rho * (1.0 - 1e-12), 400) {
            let e = (-r.powf(self.alpha - 1.0)).exp();
            if r <= e {
                let mut x = zero.clone();
                x[0] = r;
                return Err(violation("|x| > exp(-|x|^(alpha-1))", 0.0, &x, r, e));
            }
        }

        let h_profiles: Vec<_> = self.h.iter().map(|h| h.shape.monotone()).collect();
        let g_profiles: Vec<_> = self.g.iter().map(|g| g.shape.monotone()).collect();
        for p in self.validation_grid().points()? {
            let (t, x) = (p.t, p.x.as_slice());
            let r = norm(x);
            let h_box = product_box(
                &self
                    .h
                    .iter()
                    .zip(&h_profiles)
                    .zip(x)
                    .map(|((h, prof), &xi)| h.interval(prof, t, xi))
                    .collect::<Vec<_>>(),
            )?;
            let lhs = self.a.eval(t) * r.powf(2.0 * self.alpha);
            let rhs = vertices(&h_box)?
                .iter()
                .map(|hv| dot(x, hv))
                .fold(f64::INFINITY, f64::min);
            if lhs > rhs + tol * (1.0 + lhs.abs()) {
                return Err(violation("a(t)|x|^(2 alpha) <= <x, h(t,x)>", t, x, lhs, rhs));
            }
            let g_box = product_box(
                &self
                    .g
                    .iter()
                    .zip(&g_profiles)
                    .zip(x)
                    .map(|((g, prof), &xi)| g.interval(prof, t, xi))
                    .collect::<Vec<_>>(),
            )?;
            let bt = self.weights_at(t);
            let lhs = vertices(&g_box)?
                .iter()
                .map(|gv| dot(x, &bt.mul_vec(gv)))
                .fold(f64::NEG_INFINITY, f64::max);
            let rhs = self.b.eval(t) * r * r;
            if lhs > rhs + tol * (1.0 + rhs.abs()) {
                return Err(violation("<x, B(t)g(t,x)> <= b(t)|x|^2", t, x, lhs, rhs));
            }
        }
        Ok(())
    }
}
