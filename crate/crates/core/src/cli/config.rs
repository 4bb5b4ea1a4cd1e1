use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::certifier::{GridSpec, LyapunovCandidate, TimeSamples};
use crate::comparison::{ComparisonNonlinearity, GainFunction, RateSpec};
use crate::error::{Error, Result};
use crate::hopfield::{HopfieldSpec, HopfieldSystem};
use crate::integrator::{SelectionStrategy, StepControl};
use crate::setvalued::{filippov_interval, product_box, CaratheodoryMap, ConvexSet, Interval, MonotoneScalarFunction};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Preset {
    /// Two-neuron Hopfield network of [`HopfieldSpec::reference`].
    #[serde(rename = "hopfield-ref-1")]
    HopfieldRef1,
    /// `x' ∈ -Filippov[sign](x)` in one dimension.
    #[serde(rename = "sign-1d")]
    Sign1d,
    /// `x' = x`, a negative control.
    #[serde(rename = "repeller")]
    Repeller,
    /// `x' = 0`.
    #[serde(rename = "zero-field")]
    ZeroField,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SystemConfig {
    Preset(Preset),
    Hopfield { hopfield: HopfieldSpec },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LyapunovKind {
    /// `|x|²`
    NormSquared,
    /// `|x|`
    Norm,
    /// The Hopfield candidate; only valid for Hopfield systems.
    Hopfield,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LyapunovConfig {
    pub kind: LyapunovKind,
    /// Overrides the candidate's Lipschitz flag.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lipschitz: Option<bool>,
}

/// One JSON document describing a run. Omitted parts fall back to the
/// preset's defaults.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub system: SystemConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rate: Option<RateSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lyapunov: Option<LyapunovConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<GridSpec>,
    /// Multiplies the shells and directions of a log-radial grid.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid_density: Option<usize>,
    #[serde(default)]
    pub step: StepControl,
    #[serde(default)]
    pub initial: Vec<Vec<f64>>,
    /// Initial Lyapunov value for `settle-bound` without a state.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub v0: Option<f64>,
    #[serde(default)]
    pub t0: f64,
    /// Simulated time span after `t0`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub horizon: Option<f64>,
    #[serde(default)]
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub selections: Vec<SelectionStrategy>,
    #[serde(default = "default_n_random")]
    pub n_random: usize,
    /// Basin radius for the Hopfield demo.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<f64>,
}

fn default_n_random() -> usize {
    8
}

impl Default for RunConfig {
    fn default() -> Self {
        Self::preset(Preset::HopfieldRef1)
    }
}

impl RunConfig {
    pub fn preset(p: Preset) -> Self {
        Self {
            system: SystemConfig::Preset(p),
            rate: None,
            lyapunov: None,
            grid: None,
            grid_density: None,
            step: StepControl::default(),
            initial: Vec::new(),
            v0: None,
            t0: 0.0,
            horizon: None,
            seed: 0,
            selections: Vec::new(),
            n_random: default_n_random(),
            epsilon: None,
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Config(format!("cannot parse config: {e}")))
    }

    pub fn load(path: impl AsRef<std::path::Path>) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    /// JSON with object keys sorted, so the text depends only on content.
    pub fn canonical_json(&self) -> String {
        let v = serde_json::to_value(self).expect("configs serialize");
        serde_json::to_string(&v).expect("values serialize")
    }

    /// Hex SHA-256 of [`RunConfig::canonical_json`].
    pub fn hash(&self) -> String {
        hex::encode(Sha256::digest(self.canonical_json().as_bytes()))
    }
}

/// A configured system with everything the commands need.
#[derive(Clone, Debug)]
pub struct ResolvedSystem {
    pub map: CaratheodoryMap,
    pub v: Option<LyapunovCandidate>,
    pub rate: Option<RateSpec>,
    pub grid: GridSpec,
    pub initial: Vec<Vec<f64>>,
    pub horizon: f64,
    pub hopfield: Option<HopfieldSystem>,
}

fn sqrt_rate() -> RateSpec {
    RateSpec::new(
        GainFunction::constant(1.0),
        ComparisonNonlinearity::power(0.5).expect("valid exponent"),
    )
    .expect("valid rate")
}

fn unit_grid(dim: usize) -> GridSpec {
    GridSpec::log_radial(
        dim,
        1e-4,
        1.0,
        20,
        2,
        TimeSamples {
            start: 0.0,
            end: 1.0,
            count: 5,
        },
    )
}

fn scalar_system(map: CaratheodoryMap, v: LyapunovCandidate, x0: f64, horizon: f64) -> ResolvedSystem {
    ResolvedSystem {
        map,
        v: Some(v),
        rate: Some(sqrt_rate()),
        grid: unit_grid(1),
        initial: vec![vec![x0]],
        horizon,
        hopfield: None,
    }
}

fn hopfield_system(sys: HopfieldSystem) -> ResolvedSystem {
    ResolvedSystem {
        map: sys.inclusion.clone(),
        v: Some(sys.v.clone()),
        rate: Some(sys.rate.clone()),
        grid: sys.default_grid(),
        initial: vec![vec![0.008, -0.006]],
        horizon: sys.spec.horizon(),
        hopfield: Some(sys),
    }
}

/// `x' ∈ -Filippov[sign](x)`.
pub fn sign_field() -> CaratheodoryMap {
    let s = MonotoneScalarFunction::sign(1.0);
    CaratheodoryMap::new(1, GainFunction::constant(1.0), true, move |_, x| {
        let i = filippov_interval(&s, x[0]);
        product_box(&[Interval::new(-i.hi, -i.lo)])
    })
    .expect("valid growth")
}

impl RunConfig {
    /// Builds the system, applying the config's overrides. Hopfield specs
    /// are validated unless `validate` is false.
    pub fn resolve_with(&self, validate: bool) -> Result<ResolvedSystem> {
        let mut sys = match &self.system {
            SystemConfig::Preset(Preset::HopfieldRef1) => hopfield_system(HopfieldSystem::build(HopfieldSpec::reference())?),
            SystemConfig::Hopfield { hopfield } => {
                let spec = hopfield.clone();
                hopfield_system(if validate {
                    HopfieldSystem::build(spec)?
                } else {
                    HopfieldSystem::build_unvalidated(spec)?
                })
            }
            SystemConfig::Preset(Preset::Sign1d) => scalar_system(sign_field(), LyapunovCandidate::norm(1), 1.0, 3.0),
            SystemConfig::Preset(Preset::Repeller) => scalar_system(
                CaratheodoryMap::single_valued(1, GainFunction::constant(1.0), true, |_, x| x.to_vec())?,
                LyapunovCandidate::norm_squared(1),
                0.5,
                2.0,
            ),
            SystemConfig::Preset(Preset::ZeroField) => scalar_system(
                CaratheodoryMap::new(1, GainFunction::constant(0.0), true, |_, _| {
                    Ok(ConvexSet::singleton(vec![0.0]))
                })?,
                LyapunovCandidate::norm_squared(1),
                1.0,
                3.0,
            ),
        };
        let dim = sys.map.dim();
        if let Some(rate) = &self.rate {
            rate.c.validate()?;
            rate.g.validate()?;
            sys.rate = Some(rate.clone());
        }
        if let Some(cfg) = &self.lyapunov {
            let mut v = match cfg.kind {
                LyapunovKind::NormSquared => LyapunovCandidate::norm_squared(dim),
                LyapunovKind::Norm => LyapunovCandidate::norm(dim),
                LyapunovKind::Hopfield => sys
                    .hopfield
                    .as_ref()
                    .map(|h| h.v.clone())
                    .ok_or_else(|| Error::Config("the hopfield candidate needs a hopfield system".into()))?,
            };
            if let Some(flag) = cfg.lipschitz {
                v = v.lipschitz(flag);
            }
            sys.v = Some(v);
        }
        if let Some(grid) = &self.grid {
            sys.grid = grid.clone();
        }
        if let GridSpec::LogRadial {
            shells,
            directions,
            seed,
            ..
        } = &mut sys.grid
        {
            let k = self.grid_density.unwrap_or(1).max(1);
            *shells *= k;
            *directions *= k;
            *seed = self.seed;
        }
        if !self.initial.is_empty() {
            sys.initial = self.initial.clone();
        }
        if let Some(h) = self.horizon {
            if !(h > 0.0 && h.is_finite()) {
                return Err(Error::Config(format!("horizon must be positive, got {h}")));
            }
            sys.horizon = h;
        }
        if let Some(x) = sys.initial.iter().find(|x| x.len() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: x.len(),
            });
        }
        if let Some(v) = &sys.v {
            if v.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: v.dim(),
                });
            }
        }
        Ok(sys)
    }

    pub fn resolve(&self) -> Result<ResolvedSystem> {
        self.resolve_with(true)
    }
}
