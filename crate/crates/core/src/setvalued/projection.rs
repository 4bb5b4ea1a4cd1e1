//! Euclidean projection onto the convex hull of a finite point set
//! (Wolfe's minimum-norm-point active-set method).

use crate::linalg::{dot, sub};

const MAX_MAJOR: usize = 500;

/// Solves `A x = b` by Gaussian elimination with partial pivoting.
fn solve(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[piv][col].abs() < 1e-300 {
            return None;
        }
        a.swap(col, piv);
        b.swap(col, piv);
        for row in col + 1..n {
            let f = a[row][col] / a[col][col];
            if f != 0.0 {
                let (upper, lower) = a.split_at_mut(row);
                for (dst, src) in lower[0][col..n].iter_mut().zip(&upper[col][col..n]) {
                    *dst -= f * src;
                }
                b[row] -= f * b[col];
            }
        }
    }
    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        let s: f64 = (i + 1..n).map(|k| a[i][k] * x[k]).sum();
        x[i] = (b[i] - s) / a[i][i];
    }
    x.iter().all(|v| v.is_finite()).then_some(x)
}

/// Weights `μ` (summing to one) of the minimum-norm point of the affine
/// hull of `pts[idx]`.
fn affine_minimizer(pts: &[Vec<f64>], idx: &[usize]) -> Option<Vec<f64>> {
    let k = idx.len();
    let mut a = vec![vec![0.0; k + 1]; k + 1];
    for i in 0..k {
        for j in 0..k {
            a[i][j] = dot(&pts[idx[i]], &pts[idx[j]]);
        }
        a[i][k] = 1.0;
        a[k][i] = 1.0;
    }
    let mut rhs = vec![0.0; k + 1];
    rhs[k] = 1.0;
    let sol = solve(a, rhs)?;
    Some(sol[..k].to_vec())
}

fn combine(pts: &[Vec<f64>], idx: &[usize], w: &[f64]) -> Vec<f64> {
    let mut x = vec![0.0; pts[0].len()];
    for (&i, &wi) in idx.iter().zip(w) {
        for (xk, pk) in x.iter_mut().zip(&pts[i]) {
            *xk += wi * pk;
        }
    }
    x
}

/// Minimum-norm point of `conv(pts)`. `pts` must be nonempty.
pub fn min_norm_point(pts: &[Vec<f64>]) -> Vec<f64> {
    assert!(!pts.is_empty(), "min_norm_point on an empty set");
    let scale = pts.iter().map(|p| dot(p, p)).fold(0.0, f64::max);
    let eps = 1e-12 * scale.max(1e-300);
    let start = (0..pts.len())
        .min_by(|&i, &j| dot(&pts[i], &pts[i]).total_cmp(&dot(&pts[j], &pts[j])))
        .unwrap();
    let mut active = vec![start];
    let mut lambda = vec![1.0];
    let mut x = pts[start].clone();

    for _ in 0..MAX_MAJOR {
        let xx = dot(&x, &x);
        let (j, best) = (0..pts.len())
            .map(|j| (j, dot(&x, &pts[j])))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .unwrap();
        if best >= xx - eps || active.contains(&j) {
            break;
        }
        active.push(j);
        lambda.push(0.0);
        loop {
            let Some(mu) = affine_minimizer(pts, &active) else {
                // affinely dependent support: drop the newest point and stop
                active.pop();
                lambda.pop();
                return combine(pts, &active, &lambda);
            };
            if mu.iter().all(|&m| m > 1e-15) {
                lambda = mu;
                x = combine(pts, &active, &lambda);
                break;
            }
            let mut theta = 1.0f64;
            for (l, m) in lambda.iter().zip(&mu) {
                if *m <= 1e-15 && l - m > 0.0 {
                    theta = theta.min(l / (l - m));
                }
            }
            for (l, m) in lambda.iter_mut().zip(&mu) {
                *l += theta * (m - *l);
            }
            let mut k = 0;
            while k < active.len() {
                if lambda[k] <= 1e-15 {
                    active.remove(k);
                    lambda.remove(k);
                } else {
                    k += 1;
                }
            }
            let total: f64 = lambda.iter().sum();
            lambda.iter_mut().for_each(|l| *l /= total);
            x = combine(pts, &active, &lambda);
            if active.len() <= 1 {
                break;
            }
        }
    }
    x
}

/// Nearest point of `conv(vertices)` to `p`.
pub fn project_onto_hull(p: &[f64], vertices: &[Vec<f64>]) -> Vec<f64> {
    let shifted: Vec<Vec<f64>> = vertices.iter().map(|v| sub(v, p)).collect();
    let m = min_norm_point(&shifted);
    m.iter().zip(p).map(|(a, b)| a + b).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::dist;

    #[test]
    fn segment_projection() {
        let seg = vec![vec![0.0, 0.0], vec![1.0, 0.0]];
        let q = project_onto_hull(&[1.0, 1.0], &seg);
        assert!(dist(&q, &[1.0, 0.0]) < 1e-12);
        let q = project_onto_hull(&[0.3, -2.0], &seg);
        assert!(dist(&q, &[0.3, 0.0]) < 1e-12);
    }

    #[test]
    fn triangle_interior_and_edge() {
        let tri = vec![vec![0.0, 0.0], vec![2.0, 0.0], vec![0.0, 2.0]];
        let q = project_onto_hull(&[0.5, 0.5], &tri);
        assert!(dist(&q, &[0.5, 0.5]) < 1e-12);
        let q = project_onto_hull(&[2.0, 2.0], &tri);
        assert!(dist(&q, &[1.0, 1.0]) < 1e-12, "{q:?}");
    }
}
