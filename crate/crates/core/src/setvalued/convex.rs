use serde::{Deserialize, Serialize};

use super::projection::project_onto_hull;
use crate::error::{Error, Result};
use crate::linalg::{dist, dot, norm, Matrix};

/// Default cap on the number of free coordinates during vertex enumeration.
pub const VERTEX_DIM_CAP: usize = 20;

/// Point sets up to this size get their non-extreme points pruned.
const PRUNE_LIMIT: usize = 64;

/// Closed interval `[lo, hi]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Self {
        Self { lo, hi }
    }

    pub fn point(v: f64) -> Self {
        Self { lo: v, hi: v }
    }

    pub fn is_degenerate(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, v: f64) -> bool {
        self.lo <= v && v <= self.hi
    }
}

/// Nonempty compact convex subset of `Rⁿ`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ConvexSet {
    Singleton { point: Vec<f64> },
    Box { lower: Vec<f64>, upper: Vec<f64> },
    Polytope { vertices: Vec<Vec<f64>> },
    /// `{ A u + b : lower ≤ u ≤ upper }`
    AffineBox {
        matrix: Matrix,
        offset: Vec<f64>,
        lower: Vec<f64>,
        upper: Vec<f64>,
    },
}

fn all_finite(v: &[f64]) -> bool {
    v.iter().all(|x| x.is_finite())
}

fn check_box(lower: &[f64], upper: &[f64]) -> Result<()> {
    if lower.len() != upper.len() {
        return Err(Error::DimensionMismatch {
            expected: lower.len(),
            found: upper.len(),
        });
    }
    if !all_finite(lower) || !all_finite(upper) {
        return Err(Error::InvalidSet("box bounds must be finite".into()));
    }
    if let Some(i) = lower.iter().zip(upper).position(|(l, u)| l > u) {
        return Err(Error::InvalidSet(format!(
            "empty box: lower[{i}] = {} > upper[{i}] = {}",
            lower[i], upper[i]
        )));
    }
    Ok(())
}

/// Corners of a box; collapsed sides are not duplicated. Bit `k` of the
/// corner index selects the upper bound of the `k`-th free coordinate.
fn box_corners(lower: &[f64], upper: &[f64], cap: usize) -> Result<Vec<Vec<f64>>> {
    let free: Vec<usize> = (0..lower.len()).filter(|&i| lower[i] != upper[i]).collect();
    if free.len() > cap {
        return Err(Error::DimensionOverflow {
            dim: free.len(),
            cap,
        });
    }
    let count = 1usize << free.len();
    Ok((0..count)
        .map(|mask| {
            let mut p = lower.to_vec();
            for (bit, &i) in free.iter().enumerate() {
                if mask >> bit & 1 == 1 {
                    p[i] = upper[i];
                }
            }
            p
        })
        .collect())
}

fn dedup(points: Vec<Vec<f64>>) -> Vec<Vec<f64>> {
    let mut out: Vec<Vec<f64>> = Vec::with_capacity(points.len());
    for p in points {
        if !out.contains(&p) {
            out.push(p);
        }
    }
    out
}

/// Drops points lying in the convex hull of the remaining ones.
fn prune_interior(points: Vec<Vec<f64>>) -> Vec<Vec<f64>> {
    if points.len() <= 2 || points.len() > PRUNE_LIMIT {
        return points;
    }
    let scale = points.iter().map(|p| norm(p)).fold(1.0, f64::max);
    let mut keep = points;
    let mut i = 0;
    while i < keep.len() && keep.len() > 1 {
        let others: Vec<Vec<f64>> = keep
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, p)| p.clone())
            .collect();
        let q = project_onto_hull(&keep[i], &others);
        if dist(&q, &keep[i]) <= 1e-12 * scale {
            keep.remove(i);
        } else {
            i += 1;
        }
    }
    keep
}

impl ConvexSet {
    pub fn singleton(point: Vec<f64>) -> Self {
        Self::Singleton { point }
    }

    pub fn new_box(lower: Vec<f64>, upper: Vec<f64>) -> Result<Self> {
        check_box(&lower, &upper)?;
        Ok(Self::Box { lower, upper })
    }

    pub fn polytope(vertices: Vec<Vec<f64>>) -> Result<Self> {
        let s = Self::Polytope { vertices };
        s.validate()?;
        Ok(s)
    }

    pub fn affine_box(matrix: Matrix, offset: Vec<f64>, lower: Vec<f64>, upper: Vec<f64>) -> Result<Self> {
        let s = Self::AffineBox {
            matrix,
            offset,
            lower,
            upper,
        };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            Self::Singleton { point } => {
                if !all_finite(point) {
                    return Err(Error::InvalidSet("singleton must be finite".into()));
                }
            }
            Self::Box { lower, upper } => check_box(lower, upper)?,
            Self::Polytope { vertices } => {
                let Some(first) = vertices.first() else {
                    return Err(Error::InvalidSet("polytope needs at least one vertex".into()));
                };
                for v in vertices {
                    if v.len() != first.len() {
                        return Err(Error::DimensionMismatch {
                            expected: first.len(),
                            found: v.len(),
                        });
                    }
                    if !all_finite(v) {
                        return Err(Error::InvalidSet("polytope vertices must be finite".into()));
                    }
                }
            }
            Self::AffineBox {
                matrix,
                offset,
                lower,
                upper,
            } => {
                check_box(lower, upper)?;
                if matrix.cols() != lower.len() {
                    return Err(Error::DimensionMismatch {
                        expected: matrix.cols(),
                        found: lower.len(),
                    });
                }
                if matrix.rows() != offset.len() {
                    return Err(Error::DimensionMismatch {
                        expected: matrix.rows(),
                        found: offset.len(),
                    });
                }
                if !all_finite(offset) {
                    return Err(Error::InvalidSet("affine offset must be finite".into()));
                }
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        match self {
            Self::Singleton { point } => point.len(),
            Self::Box { lower, .. } => lower.len(),
            Self::Polytope { vertices } => vertices[0].len(),
            Self::AffineBox { offset, .. } => offset.len(),
        }
    }

    pub fn vertices(&self) -> Result<Vec<Vec<f64>>> {
        self.vertices_with_cap(VERTEX_DIM_CAP)
    }

    /// Extreme points. Boxes yield their corners; affine images yield the
    /// images of the base corners with duplicates and (for small sets)
    /// interior images removed.
    pub fn vertices_with_cap(&self, cap: usize) -> Result<Vec<Vec<f64>>> {
        match self {
            Self::Singleton { point } => Ok(vec![point.clone()]),
            Self::Box { lower, upper } => box_corners(lower, upper, cap),
            Self::Polytope { vertices } => Ok(prune_interior(dedup(vertices.clone()))),
            Self::AffineBox {
                matrix,
                offset,
                lower,
                upper,
            } => {
                let images = box_corners(lower, upper, cap)?
                    .into_iter()
                    .map(|u| {
                        let mut y = matrix.mul_vec(&u);
                        y.iter_mut().zip(offset).for_each(|(a, b)| *a += b);
                        y
                    })
                    .collect();
                Ok(prune_interior(dedup(images)))
            }
        }
    }

    /// `max_{f ∈ S} ⟨d, f⟩`
    pub fn support(&self, d: &[f64]) -> f64 {
        match self {
            Self::Singleton { point } => dot(d, point),
            Self::Box { lower, upper } => d
                .iter()
                .zip(lower.iter().zip(upper))
                .map(|(di, (l, u))| (di * l).max(di * u))
                .sum(),
            Self::Polytope { vertices } => vertices
                .iter()
                .map(|v| dot(d, v))
                .fold(f64::NEG_INFINITY, f64::max),
            Self::AffineBox {
                matrix,
                offset,
                lower,
                upper,
            } => {
                let dt = matrix.tr_mul_vec(d);
                dot(d, offset)
                    + dt
                        .iter()
                        .zip(lower.iter().zip(upper))
                        .map(|(di, (l, u))| (di * l).max(di * u))
                        .sum::<f64>()
            }
        }
    }

    /// Euclidean distance from `p` to the set.
    pub fn distance(&self, p: &[f64]) -> Result<f64> {
        if p.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: p.len(),
            });
        }
        Ok(match self {
            Self::Singleton { point } => dist(p, point),
            Self::Box { lower, upper } => p
                .iter()
                .zip(lower.iter().zip(upper))
                .map(|(x, (l, u))| {
                    let c = x.clamp(*l, *u);
                    (x - c) * (x - c)
                })
                .sum::<f64>()
                .sqrt(),
            _ => {
                let verts = self.vertices()?;
                dist(p, &project_onto_hull(p, &verts))
            }
        })
    }

    /// `sup_{f ∈ S} |f|`; the norm is convex so its maximum sits at a vertex.
    pub fn sup_norm(&self) -> Result<f64> {
        Ok(match self {
            Self::Singleton { point } => norm(point),
            Self::Box { lower, upper } => lower
                .iter()
                .zip(upper)
                .map(|(l, u)| l.abs().max(u.abs()).powi(2))
                .sum::<f64>()
                .sqrt(),
            _ => self
                .vertices()?
                .iter()
                .map(|v| norm(v))
                .fold(0.0, f64::max),
        })
    }
}

/// Cartesian product of intervals; all-degenerate products collapse to a
/// singleton.
pub fn product_box(intervals: &[Interval]) -> Result<ConvexSet> {
    let lower: Vec<f64> = intervals.iter().map(|i| i.lo).collect();
    let upper: Vec<f64> = intervals.iter().map(|i| i.hi).collect();
    check_box(&lower, &upper)?;
    if intervals.iter().all(Interval::is_degenerate) {
        Ok(ConvexSet::Singleton { point: lower })
    } else {
        Ok(ConvexSet::Box { lower, upper })
    }
}

/// Extreme points of `s`.
pub fn vertices(s: &ConvexSet) -> Result<Vec<Vec<f64>>> {
    s.vertices()
}

/// Distance from `p` to `s`.
pub fn point_set_distance(p: &[f64], s: &ConvexSet) -> Result<f64> {
    s.distance(p)
}

/// Support function `max_{f ∈ s} ⟨d, f⟩`.
pub fn support_value(s: &ConvexSet, d: &[f64]) -> f64 {
    s.support(d)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit_square() -> ConvexSet {
        ConvexSet::new_box(vec![0.0, 0.0], vec![1.0, 1.0]).unwrap()
    }

    #[test]
    fn product_box_examples() {
        let b = product_box(&[Interval::new(-1.0, 1.0), Interval::point(0.0)]).unwrap();
        assert_eq!(b, ConvexSet::new_box(vec![-1.0, 0.0], vec![1.0, 0.0]).unwrap());
        assert_eq!(product_box(&[Interval::point(2.0)]).unwrap(), ConvexSet::singleton(vec![2.0]));
        let cube = product_box(&[Interval::new(0.0, 1.0); 3]).unwrap();
        assert_eq!(cube.vertices().unwrap().len(), 8);
        assert!(product_box(&[Interval::new(1.0, 0.0)]).is_err());
    }

    #[test]
    fn vertex_examples() {
        assert_eq!(
            unit_square().vertices().unwrap(),
            vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![0.0, 1.0], vec![1.0, 1.0]]
        );
        assert_eq!(ConvexSet::singleton(vec![3.0, 4.0]).vertices().unwrap(), vec![vec![3.0, 4.0]]);
        let a = Matrix::from_rows(vec![vec![1.0, 0.0], vec![0.0, 2.0]]).unwrap();
        let s = ConvexSet::affine_box(a, vec![1.0, 0.0], vec![0.0, 0.0], vec![1.0, 1.0]).unwrap();
        assert_eq!(
            s.vertices().unwrap(),
            vec![vec![1.0, 0.0], vec![2.0, 0.0], vec![1.0, 2.0], vec![2.0, 2.0]]
        );
    }

    #[test]
    fn vertex_cap_overflow() {
        let b = ConvexSet::new_box(vec![0.0; 21], vec![1.0; 21]).unwrap();
        assert!(matches!(b.vertices(), Err(Error::DimensionOverflow { dim: 21, cap: 20 })));
        // collapsed sides do not count toward the cap
        let mut upper = vec![0.0; 30];
        upper[0] = 1.0;
        let b = ConvexSet::new_box(vec![0.0; 30], upper).unwrap();
        assert_eq!(b.vertices().unwrap().len(), 2);
    }

    #[test]
    fn distance_examples() {
        assert_eq!(point_set_distance(&[0.5, 0.5], &unit_square()).unwrap(), 0.0);
        assert_eq!(point_set_distance(&[2.0, 0.0], &unit_square()).unwrap(), 1.0);
        let seg = ConvexSet::polytope(vec![vec![0.0, 0.0], vec![1.0, 0.0]]).unwrap();
        assert!((point_set_distance(&[1.0, 1.0], &seg).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn support_examples() {
        let b = ConvexSet::new_box(vec![-1.0, -1.0], vec![1.0, 1.0]).unwrap();
        assert_eq!(support_value(&b, &[1.0, 1.0]), 2.0);
        assert_eq!(support_value(&ConvexSet::singleton(vec![3.0, 4.0]), &[0.0, 1.0]), 4.0);
        let seg = ConvexSet::polytope(vec![vec![0.0, 0.0], vec![2.0, 1.0]]).unwrap();
        assert_eq!(support_value(&seg, &[1.0, -1.0]), 1.0);
    }

    #[test]
    fn interior_polytope_points_pruned() {
        let p = ConvexSet::polytope(vec![vec![0.0, 0.0], vec![2.0, 0.0], vec![1.0, 0.0], vec![0.0, 2.0], vec![0.5, 0.5]]).unwrap();
        assert_eq!(p.vertices().unwrap().len(), 3);
    }
}
