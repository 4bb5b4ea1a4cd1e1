use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::derivative::contingent_bounds;
use super::grid::GridSpec;
use super::lyapunov::LyapunovCandidate;
use crate::comparison::RateSpec;
use crate::error::{Error, Result};
use crate::setvalued::CaratheodoryMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Some velocity decreases `V` fast enough (epiderivative, infimum).
    Weak,
    /// Every velocity does (hypoderivative, supremum); needs Lipschitz `V`.
    Strong,
}

impl std::str::FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "weak" => Ok(Self::Weak),
            "strong" => Ok(Self::Strong),
            other => Err(Error::Config(format!("unknown mode {other:?}, expected weak or strong"))),
        }
    }
}

/// Decrease margin `D V(t,x)(1,f) + c(t) g(V(t,x))` at one point.
#[derive(Clone, Debug, PartialEq)]
pub struct Margin {
    pub margin: f64,
    /// Extremal vertex of `F(t, x)`.
    pub witness: Vec<f64>,
    /// Magnitude used for the relative tolerance.
    pub scale: f64,
    pub exact: bool,
}

impl Margin {
    /// `margin ≤ 10⁻⁹ (1 + scale)`; ties at zero pass.
    pub fn holds(&self) -> bool {
        self.margin <= default_tolerance(self.scale)
    }
}

pub fn default_tolerance(scale: f64) -> f64 {
    1e-9 * (1.0 + scale.abs())
}

fn condition_at(
    v: &LyapunovCandidate,
    map: &CaratheodoryMap,
    rate: &RateSpec,
    t: f64,
    x: &[f64],
    mode: Mode,
) -> Result<Margin> {
    let set = map.value(t, x)?;
    let decay = rate.decay(t, v.value(t, x));
    let mut best: Option<Margin> = None;
    for f in set.vertices()? {
        let d = contingent_bounds(v, t, x, &f)?;
        let deriv = match mode {
            Mode::Weak => d.epi,
            Mode::Strong => d.hypo,
        };
        let m = deriv + decay;
        let better = match (&best, mode) {
            (None, _) => true,
            (Some(b), Mode::Weak) => m < b.margin,
            (Some(b), Mode::Strong) => m > b.margin,
        };
        if better {
            best = Some(Margin {
                margin: m,
                witness: f,
                scale: deriv.abs() + decay.abs(),
                exact: d.exact,
            });
        }
    }
    Ok(best.expect("convex sets have at least one vertex"))
}

/// `min over vertices f of D↑V(t,x)(1,f) + c(t) g(V(t,x))`.
pub fn weak_condition_at(
    v: &LyapunovCandidate,
    map: &CaratheodoryMap,
    rate: &RateSpec,
    t: f64,
    x: &[f64],
) -> Result<Margin> {
    condition_at(v, map, rate, t, x, Mode::Weak)
}

/// `max over vertices f of D↓V(t,x)(1,f) + c(t) g(V(t,x))`.
///
/// Reducing the supremum over `F(t, x)` to its vertices is exact when the
/// derivative is linear in `f` (smooth `V`); otherwise it is a heuristic
/// and the returned margin has `exact == false`.
pub fn strong_condition_at(
    v: &LyapunovCandidate,
    map: &CaratheodoryMap,
    rate: &RateSpec,
    t: f64,
    x: &[f64],
) -> Result<Margin> {
    if !v.is_lipschitz() {
        return Err(Error::MissingLipschitz);
    }
    condition_at(v, map, rate, t, x, Mode::Strong)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub t: f64,
    pub x: Vec<f64>,
    pub margin: f64,
    pub witness: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MarginStats {
    pub min: f64,
    pub max: f64,
    pub mean: f64,
}

/// Outcome of a grid check; `pass` iff `violations` is empty.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub mode: Mode,
    pub grid: GridSpec,
    pub evaluations: usize,
    pub violations: Vec<Violation>,
    pub pass: bool,
    pub stats: Option<MarginStats>,
    /// Set when some margin came from difference quotients rather than a
    /// gradient, so vertex reduction and the derivative are both estimates.
    pub estimated_derivatives: bool,
    pub warnings: Vec<String>,
}

impl CheckReport {
    pub(crate) fn from_margins(mode: Mode, grid: &GridSpec, evaluated: Vec<(f64, Vec<f64>, Margin)>) -> Self {
        let mut warnings = Vec::new();
        if evaluated.is_empty() {
            warnings.push("empty grid: the condition holds vacuously".to_string());
        }
        let estimated = evaluated.iter().any(|(_, _, m)| !m.exact);
        if estimated {
            warnings.push(
                "some derivatives were estimated by difference quotients; a numeric pass is evidence, not a proof"
                    .to_string(),
            );
        }
        let stats = (!evaluated.is_empty()).then(|| {
            let min = evaluated.iter().map(|e| e.2.margin).fold(f64::INFINITY, f64::min);
            let max = evaluated.iter().map(|e| e.2.margin).fold(f64::NEG_INFINITY, f64::max);
            let mean = evaluated.iter().map(|e| e.2.margin).sum::<f64>() / evaluated.len() as f64;
            MarginStats { min, max, mean }
        });
        let violations: Vec<Violation> = evaluated
            .iter()
            .filter(|(_, _, m)| !m.holds())
            .map(|(t, x, m)| Violation {
                t: *t,
                x: x.clone(),
                margin: m.margin,
                witness: m.witness.clone(),
            })
            .collect();
        Self {
            mode,
            grid: grid.clone(),
            evaluations: evaluated.len(),
            pass: violations.is_empty(),
            violations,
            stats,
            estimated_derivatives: estimated,
            warnings,
        }
    }
}

/// Evaluates the weak or strong decrease condition on every grid point.
/// Points are checked in parallel; the report is independent of scheduling.
pub fn check_stability(
    v: &LyapunovCandidate,
    map: &CaratheodoryMap,
    rate: &RateSpec,
    mode: Mode,
    grid: &GridSpec,
) -> Result<CheckReport> {
    if mode == Mode::Strong && !v.is_lipschitz() {
        return Err(Error::MissingLipschitz);
    }
    let points = grid.points()?;
    let evaluated = points
        .par_iter()
        .map(|p| condition_at(v, map, rate, p.t, &p.x, mode).map(|m| (p.t, p.x.clone(), m)))
        .collect::<Result<Vec<_>>>()?;
    Ok(CheckReport::from_margins(mode, grid, evaluated))
}
