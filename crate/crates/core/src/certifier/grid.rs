use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::norm;

/// Uniform time samples on `[start, end]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TimeSamples {
    pub start: f64,
    pub end: f64,
    pub count: usize,
}

impl TimeSamples {
    pub fn points(&self) -> Vec<f64> {
        match self.count {
            0 => Vec::new(),
            1 => vec![self.start],
            n => (0..n)
                .map(|i| self.start + (self.end - self.start) * i as f64 / (n - 1) as f64)
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridPoint {
    pub t: f64,
    pub x: Vec<f64>,
}

/// Where the Lyapunov conditions are evaluated.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GridSpec {
    /// Geometric radii from `r_min` to `r_max` × sphere directions × times.
    /// Times within `1e-12` of an exceptional time are skipped (the
    /// conditions only need to hold on a full-measure set of times).
    LogRadial {
        dim: usize,
        r_min: f64,
        r_max: f64,
        shells: usize,
        directions: usize,
        times: TimeSamples,
        #[serde(default)]
        exceptional_times: Vec<f64>,
        #[serde(default)]
        seed: u64,
    },
    Explicit { points: Vec<GridPoint> },
}

impl GridSpec {
    pub fn log_radial(dim: usize, r_min: f64, r_max: f64, shells: usize, directions: usize, times: TimeSamples) -> Self {
        Self::LogRadial {
            dim,
            r_min,
            r_max,
            shells,
            directions,
            times,
            exceptional_times: Vec::new(),
            seed: 0,
        }
    }

    pub fn empty() -> Self {
        Self::Explicit { points: Vec::new() }
    }

    /// Materializes the grid; the origin is never included.
    pub fn points(&self) -> Result<Vec<GridPoint>> {
        match self {
            Self::Explicit { points } => Ok(points.iter().filter(|p| norm(&p.x) > 0.0).cloned().collect()),
            Self::LogRadial {
                dim,
                r_min,
                r_max,
                shells,
                directions,
                times,
                exceptional_times,
                seed,
            } => {
                if !(*r_min > 0.0 && r_min <= r_max) {
                    return Err(Error::Config(format!(
                        "grid radii need 0 < r_min <= r_max, got ({r_min}, {r_max})"
                    )));
                }
                let radii = geometric(*r_min, *r_max, *shells);
                let dirs = sphere_directions(*dim, *directions, *seed);
                let ts: Vec<f64> = times
                    .points()
                    .into_iter()
                    .filter(|t| exceptional_times.iter().all(|e| (t - e).abs() > 1e-12))
                    .collect();
                let mut out = Vec::with_capacity(ts.len() * radii.len() * dirs.len());
                for &t in &ts {
                    for &r in &radii {
                        for d in &dirs {
                            out.push(GridPoint {
                                t,
                                x: d.iter().map(|v| v * r).collect(),
                            });
                        }
                    }
                }
                Ok(out)
            }
        }
    }
}

pub(crate) fn geometric(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![hi],
        n => {
            let ratio = (hi / lo).ln();
            (0..n)
                .map(|i| lo * (ratio * i as f64 / (n - 1) as f64).exp())
                .collect()
        }
    }
}

/// Unit directions in `Rⁿ`: `±1` in one dimension, equally spaced angles
/// in two, and in higher dimensions the `2n` signed axes followed by
/// normalized Gaussian samples from a seeded stream.
pub fn sphere_directions(dim: usize, count: usize, seed: u64) -> Vec<Vec<f64>> {
    match dim {
        0 => Vec::new(),
        1 => vec![vec![1.0], vec![-1.0]],
        2 => {
            let n = count.max(4);
            (0..n)
                .map(|i| {
                    let a = std::f64::consts::TAU * i as f64 / n as f64;
                    vec![a.cos(), a.sin()]
                })
                .collect()
        }
        n => {
            let mut out = Vec::with_capacity(count.max(2 * n));
            for i in 0..n {
                for s in [1.0, -1.0] {
                    let mut e = vec![0.0; n];
                    e[i] = s;
                    out.push(e);
                }
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            while out.len() < count {
                let v: Vec<f64> = (0..n).map(|_| StandardNormal.sample(&mut rng)).collect();
                let r = norm(&v);
                if r > 1e-12 {
                    out.push(v.iter().map(|x| x / r).collect());
                }
            }
            out
        }
    }
}
