use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::spec::HopfieldSpec;
use crate::certifier::{
    basin_estimate, check_stability, BasinEstimate, CheckReport, GridSpec, LyapunovCandidate, Margin, Mode,
    TimeSamples,
};
use crate::comparison::{settling_time_bound, ComparisonNonlinearity, GainFunction, RateSpec, SettlingCertificate};
use crate::error::{Error, Result};
use crate::integrator::{sweep_strong, verify_settling, SettlingVerdict, StepControl, SweepSummary, Trajectory};
use crate::linalg::{dot, norm, Matrix};
use crate::setvalued::{CaratheodoryMap, ConvexSet};

/// A Hopfield network wired as an inclusion with its Lyapunov data.
#[derive(Clone, Debug)]
pub struct HopfieldSystem {
    pub spec: HopfieldSpec,
    pub inclusion: CaratheodoryMap,
    /// `V(t, x) = e^{-t} |x| (|x| - exp(-|x|^{α-1}))` on `B(0, ρ)`.
    pub v: LyapunovCandidate,
    /// `c(t) = δ e^{(α-1)t}`, `g(v) = v^α`.
    pub rate: RateSpec,
}

/// Radial profile `q(r) = r (r - exp(-r^{α-1}))` and its derivative.
fn profile(alpha: f64, r: f64) -> (f64, f64) {
    if r == 0.0 {
        return (0.0, 0.0);
    }
    let e = (-r.powf(alpha - 1.0)).exp();
    (r * (r - e), 2.0 * r - e * (1.0 + (1.0 - alpha) * r.powf(alpha - 1.0)))
}

fn lyapunov(alpha: f64, rho: f64, dim: usize) -> LyapunovCandidate {
    LyapunovCandidate::new(dim, move |t, x| (-t).exp() * profile(alpha, norm(x)).0)
        .with_gradient(move |t, x| {
            let r = norm(x);
            let (q, dq) = profile(alpha, r);
            let c = (-t).exp();
            (-c * q, x.iter().map(|xi| c * dq * xi / r).collect())
        })
        .positive_definite(true)
        .lipschitz(true)
        .on_ball(rho)
}

/// `μ` with `|F(t, x)| ≤ μ (1 + |x|)` from the shape growth bounds.
fn growth_constant(spec: &HopfieldSpec) -> Result<GainFunction> {
    let sqrt_n = (spec.n as f64).sqrt();
    let bound = |neurons: &[super::Neuron]| {
        neurons
            .iter()
            .map(|g| {
                let (k0, k1) = g.shape.linear_growth();
                g.gain.sup() * k0.max(k1)
            })
            .fold(0.0, f64::max)
            * sqrt_n
    };
    let mu = spec.weights.frobenius() * spec.weight_scale.sup() * bound(&spec.g) + bound(&spec.h) + norm(&spec.input);
    if !mu.is_finite() {
        return Err(Error::Config(
            "gains must be bounded so the inclusion has a constant growth envelope".into(),
        ));
    }
    Ok(GainFunction::constant(mu))
}

impl HopfieldSystem {
    /// Validates the standing assumptions on samples, then builds.
    pub fn build(spec: HopfieldSpec) -> Result<Self> {
        spec.validate()?;
        Self::build_unvalidated(spec)
    }

    /// Builds without checking the standing inequalities, e.g. to show
    /// that the decrease condition breaks once they fail.
    pub fn build_unvalidated(spec: HopfieldSpec) -> Result<Self> {
        spec.validate_shape()?;
        let n = spec.n;
        let h_profiles: Vec<_> = spec.h.iter().map(|h| h.shape.monotone()).collect();
        let g_profiles: Vec<_> = spec.g.iter().map(|g| g.shape.monotone()).collect();
        let s = spec.clone();
        let minus_identity = Matrix::identity(n).scaled(-1.0);
        let inclusion = CaratheodoryMap::new(n, growth_constant(&spec)?, true, move |t, x| {
            let mut lower = Vec::with_capacity(2 * n);
            let mut upper = Vec::with_capacity(2 * n);
            for ((g, prof), &xi) in s.g.iter().zip(&g_profiles).zip(x) {
                let i = g.interval(prof, t, xi);
                lower.push(i.lo);
                upper.push(i.hi);
            }
            for ((h, prof), &xi) in s.h.iter().zip(&h_profiles).zip(x) {
                let i = h.interval(prof, t, xi);
                lower.push(i.lo);
                upper.push(i.hi);
            }
            let matrix = s.weights_at(t).hcat(&minus_identity)?;
            ConvexSet::affine_box(matrix, s.input.clone(), lower, upper)
        })?;
        let rate = RateSpec::new(
            GainFunction::exp(spec.delta, spec.alpha - 1.0),
            ComparisonNonlinearity::power(spec.alpha)?,
        )?;
        Ok(Self {
            v: lyapunov(spec.alpha, spec.rho, n),
            inclusion,
            rate,
            spec,
        })
    }

    /// `∫_{t0}^∞ c = δ/(1-α) · e^{(α-1) t0}`.
    pub fn tail_mass(&self, t0: f64) -> f64 {
        let a = self.spec.alpha;
        self.spec.delta / (1.0 - a) * ((a - 1.0) * t0).exp()
    }

    /// Log-radial grid in `B(0, ρ)`: 50 shells from `10⁻⁴`, 40 directions
    /// (or `2n` axes plus samples), 5 times on `[0, check_horizon]`.
    pub fn default_grid(&self) -> GridSpec {
        GridSpec::log_radial(
            self.spec.n,
            1e-4,
            self.spec.rho * (1.0 - 1e-9),
            50,
            40,
            TimeSamples {
                start: 0.0,
                end: self.spec.horizon(),
                count: 5,
            },
        )
    }

    /// Left side `V_t + V_x f + c(t) V^α` at `(t, x)`, maximized over the
    /// vertices `f` of the inclusion value (so over every Filippov selection
    /// of the activations and self-inhibition).
    pub fn paper_margin(&self, t: f64, x: &[f64]) -> Result<Margin> {
        if !self.v.in_domain(x) || norm(x) == 0.0 {
            return Err(Error::EvaluationDomain { t, x: x.to_vec() });
        }
        let (vt, vx) = self.v.gradient(t, x).expect("gradient is supplied");
        let decay = self.rate.c.eval(t) * self.v.value(t, x).powf(self.spec.alpha);
        let mut best: Option<Margin> = None;
        for f in self.inclusion.value(t, x)?.vertices()? {
            let lin = dot(&vx, &f);
            let m = vt + lin + decay;
            if best.as_ref().is_none_or(|b| m > b.margin) {
                best = Some(Margin {
                    margin: m,
                    scale: vt.abs() + lin.abs() + decay.abs(),
                    witness: f,
                    exact: true,
                });
            }
        }
        Ok(best.expect("nonempty vertex set"))
    }

    /// Evaluates the decrease inequality with the analytic gradient on
    /// every grid point.
    pub fn verify_paper_inequality(&self, grid: &GridSpec) -> Result<CheckReport> {
        let evaluated = grid
            .points()?
            .par_iter()
            .map(|p| self.paper_margin(p.t, &p.x).map(|m| (p.t, p.x.clone(), m)))
            .collect::<Result<Vec<_>>>()?;
        Ok(CheckReport::from_margins(Mode::Strong, grid, evaluated))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DemoOptions {
    pub n_random: usize,
    pub seed: u64,
    /// Radius for the basin estimate; defaults to `ρ / 3`.
    pub epsilon: Option<f64>,
    /// Grid for the strong check; defaults to [`HopfieldSystem::default_grid`].
    pub grid: Option<GridSpec>,
}

impl Default for DemoOptions {
    fn default() -> Self {
        Self {
            n_random: 8,
            seed: 0,
            epsilon: None,
            grid: None,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DemoReport {
    pub check: CheckReport,
    pub basin: Option<BasinEstimate>,
    pub basin_error: Option<String>,
    /// `|x0|` is below the estimated `delta`.
    pub inside_basin: bool,
    pub certificate: SettlingCertificate,
    pub sweep: SweepSummary,
    pub verdicts: Vec<SettlingVerdict>,
    pub pass: bool,
    pub warnings: Vec<String>,
    #[serde(skip)]
    pub trajectories: Vec<Trajectory>,
}

/// Strong check, basin estimate, settling certificate for `V(t0, x0)`, and
/// a selection sweep with every run checked against the certificate.
///
/// An `x0` outside the estimated basin is still simulated: settling only
/// needs the certificate, the basin adds the bound `|x(t)| ≤ ε`. With an
/// unbounded certificate the sweep runs to the check horizon and the
/// report carries a warning instead of verdicts.
pub fn demo(sys: &HopfieldSystem, t0: f64, x0: &[f64], ctrl: &StepControl, opts: &DemoOptions) -> Result<DemoReport> {
    let mut warnings = Vec::new();
    let grid = opts.grid.clone().unwrap_or_else(|| sys.default_grid());
    let check = check_stability(&sys.v, &sys.inclusion, &sys.rate, Mode::Strong, &grid)?;
    let epsilon = opts.epsilon.unwrap_or(sys.spec.rho / 3.0);
    let (basin, basin_error) = match basin_estimate(&sys.v, &sys.rate, t0, epsilon, sys.spec.rho) {
        Ok(b) => (Some(b), None),
        Err(e) => (None, Some(e.to_string())),
    };
    let inside_basin = basin.as_ref().is_some_and(|b| norm(x0) < b.delta);
    if !inside_basin {
        warnings.push("x0 is not inside the estimated basin; the epsilon bound on |x(t)| is not certified".into());
    }

    let cert = settling_time_bound(&sys.rate, t0, sys.v.value(t0, x0))?;
    let t_end = match cert.t_bound.finite() {
        Some(t) => t + 1.0,
        None => {
            warnings.push("settling certificate is unbounded; simulation only".into());
            t0 + sys.spec.horizon()
        }
    };
    let sweep = sweep_strong(
        &sys.inclusion,
        &sys.v,
        &sys.rate,
        t0,
        x0,
        ctrl,
        opts.n_random,
        t_end,
        opts.seed,
    )?;
    let tol = (10.0 * ctrl.eps_zero).max(1e-5);
    let mut verdicts = Vec::new();
    if cert.t_bound.is_finite() {
        for (k, tr) in sweep.trajectories.iter().enumerate() {
            if tr.settled_at.is_none() {
                warnings.push(format!("run {k} did not settle by t = {t_end}"));
                continue;
            }
            verdicts.push(verify_settling(tr, &cert, &sys.v, &sys.rate, tol)?);
        }
    }
    let pass = check.pass
        && cert.t_bound.is_finite()
        && sweep.summary.all_before_bound
        && verdicts.len() == sweep.trajectories.len()
        && verdicts.iter().all(|v| v.pass);
    Ok(DemoReport {
        check,
        basin,
        basin_error,
        inside_basin,
        certificate: cert,
        sweep: sweep.summary,
        verdicts,
        pass,
        warnings,
        trajectories: sweep.trajectories,
    })
}
