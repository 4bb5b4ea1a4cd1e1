use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::certifier::{epiderivative, LyapunovCandidate};
use crate::error::Result;
use crate::linalg::{dist, dot};

/// How a velocity is picked from the vertices of `F(t, x)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SelectionStrategy {
    /// Vertex minimizing the epiderivative of `V` (of `|x|²` without a
    /// candidate); ties go to the lowest index.
    SteepestDescent,
    /// Vertex `index mod count`.
    FixedVertex { index: usize },
    /// Uniform vertex per step from a seeded stream.
    RandomVertex { seed: u64 },
    /// Vertex closest to the previous velocity; vertex 0 on the first step.
    Continuity,
}

impl std::str::FromStr for SelectionStrategy {
    type Err = crate::Error;

    /// `steepest`, `continuity`, `fixed:<i>` or `random:<seed>`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || crate::Error::Config(format!("unknown selection {s:?}"));
        match s.split_once(':') {
            None if s == "steepest" || s == "steepest_descent" => Ok(Self::SteepestDescent),
            None if s == "continuity" => Ok(Self::Continuity),
            Some(("fixed", i)) => i.parse().map(|index| Self::FixedVertex { index }).map_err(|_| bad()),
            Some(("random", k)) => k.parse().map(|seed| Self::RandomVertex { seed }).map_err(|_| bad()),
            _ => Err(bad()),
        }
    }
}

/// Per-run selection state.
pub(crate) struct Selector {
    strategy: SelectionStrategy,
    rng: Option<ChaCha8Rng>,
    previous: Option<Vec<f64>>,
}

impl Selector {
    pub(crate) fn new(strategy: SelectionStrategy) -> Self {
        let rng = match strategy {
            SelectionStrategy::RandomVertex { seed } => Some(ChaCha8Rng::seed_from_u64(seed)),
            _ => None,
        };
        Self {
            strategy,
            rng,
            previous: None,
        }
    }

    pub(crate) fn pick(
        &mut self,
        vertices: &[Vec<f64>],
        v: Option<&LyapunovCandidate>,
        t: f64,
        x: &[f64],
    ) -> Result<Vec<f64>> {
        let index = match self.strategy {
            SelectionStrategy::SteepestDescent => {
                let mut best = (0, f64::INFINITY);
                for (i, f) in vertices.iter().enumerate() {
                    let d = match v {
                        Some(v) => epiderivative(v, t, x, f)?,
                        None => 2.0 * dot(x, f),
                    };
                    if d < best.1 {
                        best = (i, d);
                    }
                }
                best.0
            }
            SelectionStrategy::FixedVertex { index } => index % vertices.len(),
            SelectionStrategy::RandomVertex { .. } => {
                let rng = self.rng.as_mut().expect("seeded on construction");
                rng.random_range(0..vertices.len())
            }
            SelectionStrategy::Continuity => match &self.previous {
                None => 0,
                Some(p) => {
                    let mut best = (0, f64::INFINITY);
                    for (i, f) in vertices.iter().enumerate() {
                        let d = dist(p, f);
                        if d < best.1 {
                            best = (i, d);
                        }
                    }
                    best.0
                }
            },
        };
        let f = vertices[index].clone();
        self.previous = Some(f.clone());
        Ok(f)
    }
}
