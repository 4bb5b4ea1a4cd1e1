//! Adaptive Gauss-Kronrod (7/15) quadrature with global bisection of the
//! worst interval, plus the endpoint-singular barrier integral `∫₀ᵇ 1/g`.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_225,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];

// Gauss weights for the nodes XGK[1], XGK[3], XGK[5], XGK[7].
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// Outcome of an adaptive integration.
#[derive(Clone, Copy, Debug)]
pub struct Quadrature {
    pub value: f64,
    pub error: f64,
    pub converged: bool,
}

#[derive(Clone, Copy, Debug)]
pub struct QuadOptions {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_intervals: usize,
}

impl Default for QuadOptions {
    fn default() -> Self {
        Self {
            abs_tol: 1e-15,
            rel_tol: 1e-12,
            max_intervals: 4000,
        }
    }
}

struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for j in 0..7 {
        let dx = half * XGK[j];
        let sum = f(center - dx) + f(center + dx);
        kronrod += WGK[j] * sum;
        if j % 2 == 1 {
            gauss += WG[j / 2] * sum;
        }
    }
    (kronrod * half, ((kronrod - gauss) * half).abs())
}

/// Integrates `f` over the finite interval `[a, b]`. Endpoints are never
/// evaluated, so integrable endpoint singularities are tolerated (slowly).
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, opts: QuadOptions) -> Quadrature {
    if a == b {
        return Quadrature {
            value: 0.0,
            error: 0.0,
            converged: true,
        };
    }
    let (value, error) = gk15(&f, a, b);
    let mut heap = BinaryHeap::new();
    heap.push(Segment { a, b, value, error });
    let mut total = value;
    let mut total_err = error;
    let mut intervals = 1;
    loop {
        if !total.is_finite() || !total_err.is_finite() {
            return Quadrature {
                value: total,
                error: f64::INFINITY,
                converged: false,
            };
        }
        if total_err <= opts.abs_tol.max(opts.rel_tol * total.abs()) {
            break;
        }
        if intervals >= opts.max_intervals {
            return Quadrature {
                value: total,
                error: total_err,
                converged: false,
            };
        }
        let worst = heap.pop().expect("heap holds at least one segment");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // interval can no longer be split in floating point
            return Quadrature {
                value: total,
                error: total_err,
                converged: false,
            };
        }
        let (v1, e1) = gk15(&f, worst.a, mid);
        let (v2, e2) = gk15(&f, mid, worst.b);
        total += v1 + v2 - worst.value;
        total_err += e1 + e2 - worst.error;
        heap.push(Segment {
            a: worst.a,
            b: mid,
            value: v1,
            error: e1,
        });
        heap.push(Segment {
            a: mid,
            b: worst.b,
            value: v2,
            error: e2,
        });
        intervals += 1;
    }
    // re-sum to shed the drift of the running updates
    let value = heap.iter().map(|s| s.value).sum();
    let error = heap.iter().map(|s| s.error).sum();
    Quadrature {
        value,
        error,
        converged: true,
    }
}

/// `∫₀ᵇ 1/g(v) dv` for a `g` with `g(v) ≥ m·v^β` near zero, `β < 1`.
///
/// `[0, b/2]` is integrated after the substitution `u = v^{1-β}`, which makes
/// the integrand bounded when the declared exponent is right. `[b/2, b]` is
/// split at the supplied `breakpoints` (kinks of a tabulated `g`).
pub fn singular_barrier_integral<G: Fn(f64) -> f64>(
    g: G,
    b: f64,
    beta: f64,
    breakpoints: &[f64],
) -> Result<f64> {
    if !(b >= 0.0) || !b.is_finite() {
        return Err(Error::InvalidFunction(format!(
            "barrier integral upper limit must be finite and nonnegative, got {b}"
        )));
    }
    if !(beta < 1.0) || !beta.is_finite() {
        return Err(Error::InvalidFunction(format!(
            "exponent bound near 0 must be < 1, got {beta}"
        )));
    }
    if b == 0.0 {
        return Ok(0.0);
    }
    let opts = QuadOptions::default();
    let half = 0.5 * b;
    let p = 1.0 - beta;
    let u_max = half.powf(p);
    let near = integrate(
        |u: f64| {
            let v = u.powf(1.0 / p);
            u.powf(beta / p) / (p * g(v))
        },
        0.0,
        u_max,
        opts,
    );
    if !near.converged {
        return Err(Error::DivergentIntegral {
            upper: b,
            error: near.error,
        });
    }
    let mut cuts = vec![half];
    cuts.extend(breakpoints.iter().copied().filter(|&x| x > half && x < b));
    cuts.push(b);
    let mut total = near.value;
    for w in cuts.windows(2) {
        let q = integrate(|v: f64| 1.0 / g(v), w[0], w[1], opts);
        if !q.converged {
            return Err(Error::DivergentIntegral {
                upper: b,
                error: q.error,
            });
        }
        total += q.value;
    }
    Ok(total)
}
