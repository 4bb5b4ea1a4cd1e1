//! Contingent epi- and hypoderivatives of `V` in the direction `(1, f)`.
//!
//! With a gradient the derivative is `V_t + ⟨V_x, f⟩`, exactly. Otherwise
//! the liminf/limsup is replaced by the min/max of difference quotients
//! over `h ∈ {10⁻², …, 10⁻⁸}` and directions `f'` in a ball of radius
//! `h^{1.5}` around `f` (the center plus `±` each coordinate axis). The
//! surrogate is a finite sample of the defining limit and can miss in
//! either direction for pathological `V`.

use super::lyapunov::LyapunovCandidate;
use crate::error::{Error, Result};
use crate::linalg::dot;

const STEP_EXPONENTS: std::ops::RangeInclusive<i32> = 2..=8;

/// Lower and upper contingent derivative estimates at one point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DerivativeBounds {
    pub epi: f64,
    pub hypo: f64,
    /// Both come from the exact gradient formula.
    pub exact: bool,
}

/// Difference-quotient surrogate; ignores any supplied gradient.
pub fn quotient_bounds(v: &LyapunovCandidate, t: f64, x: &[f64], f: &[f64]) -> Result<DerivativeBounds> {
    let base = v.value(t, x);
    let n = x.len();
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    let mut probe = vec![0.0; n];
    let mut dir = vec![0.0; n];
    for k in STEP_EXPONENTS {
        let h = 10f64.powi(-k);
        let radius = h.powf(1.5);
        for j in 0..=2 * n {
            dir.copy_from_slice(f);
            if j > 0 {
                let axis = (j - 1) / 2;
                dir[axis] += if j % 2 == 1 { radius } else { -radius };
            }
            for ((p, xi), di) in probe.iter_mut().zip(x).zip(&dir) {
                *p = xi + h * di;
            }
            if !v.in_domain(&probe) {
                continue;
            }
            let q = (v.value(t + h, &probe) - base) / h;
            if q.is_finite() {
                lo = lo.min(q);
                hi = hi.max(q);
            }
        }
    }
    if !lo.is_finite() {
        return Err(Error::EvaluationDomain { t, x: x.to_vec() });
    }
    Ok(DerivativeBounds {
        epi: lo,
        hypo: hi,
        exact: false,
    })
}

/// Epi/hypoderivative pair, preferring the exact gradient path.
pub fn contingent_bounds(v: &LyapunovCandidate, t: f64, x: &[f64], f: &[f64]) -> Result<DerivativeBounds> {
    if let Some((vt, vx)) = v.gradient(t, x) {
        let d = vt + dot(&vx, f);
        return Ok(DerivativeBounds {
            epi: d,
            hypo: d,
            exact: true,
        });
    }
    quotient_bounds(v, t, x, f)
}

/// Contingent epiderivative `D↑V(t, x)(1, f)`.
pub fn epiderivative(v: &LyapunovCandidate, t: f64, x: &[f64], f: &[f64]) -> Result<f64> {
    contingent_bounds(v, t, x, f).map(|b| b.epi)
}

/// Contingent hypoderivative `D↓V(t, x)(1, f)`.
pub fn hypoderivative(v: &LyapunovCandidate, t: f64, x: &[f64], f: &[f64]) -> Result<f64> {
    contingent_bounds(v, t, x, f).map(|b| b.hypo)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::norm;

    #[test]
    fn smooth_chain_rule() {
        let v = LyapunovCandidate::norm_squared(1);
        assert_eq!(epiderivative(&v, 0.3, &[1.0], &[1.0]).unwrap(), 2.0);
        assert_eq!(hypoderivative(&v, 0.3, &[1.0], &[1.0]).unwrap(), 2.0);
    }

    #[test]
    fn abs_at_kink() {
        // (|0 + h f'| - 0) / h = |f'| with |f' - f| ≤ h^{1.5} ≤ 10⁻³
        let v = LyapunovCandidate::norm(1);
        let e = epiderivative(&v, 0.0, &[0.0], &[-1.0]).unwrap();
        assert!((e - 1.0).abs() <= 1e-3 + 1e-12, "{e}");
        let h = hypoderivative(&v, 0.0, &[0.0], &[1.0]).unwrap();
        assert!((h - 1.0).abs() <= 1e-3 + 1e-12, "{h}");
        let neg = LyapunovCandidate::new(1, |_, x| -norm(x));
        let h = hypoderivative(&neg, 0.0, &[0.0], &[1.0]).unwrap();
        assert!((h + 1.0).abs() <= 1e-3 + 1e-12, "{h}");
    }

    #[test]
    fn time_derivative_only() {
        let v = LyapunovCandidate::new(1, |t, x| (-t).exp() * x[0].abs())
            .with_gradient(|t, x| (-(-t).exp() * x[0].abs(), vec![(-t).exp() * x[0].signum()]));
        let t = 0.7;
        assert_eq!(epiderivative(&v, t, &[2.0], &[0.0]).unwrap(), -2.0 * (-t).exp());
        let q = quotient_bounds(&v, t, &[2.0], &[0.0]).unwrap();
        assert!(q.epi <= q.hypo);
        assert!((q.hypo + 2.0 * (-t).exp()).abs() < 2e-2);
    }

    #[test]
    fn outside_domain_errors() {
        let v = LyapunovCandidate::norm(1).on_ball(1.0);
        let r = quotient_bounds(&v, 0.0, &[1.5], &[0.0]);
        assert!(matches!(r, Err(Error::EvaluationDomain { .. })));
    }
}
