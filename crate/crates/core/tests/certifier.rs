use fts_core::certifier::*;
use fts_core::cli::sign_field;
use fts_core::comparison::{ComparisonNonlinearity, GainFunction, RateSpec};
use fts_core::setvalued::{CaratheodoryMap, ConvexSet};
use fts_core::Error;
use proptest::prelude::*;

fn rate(c: f64, alpha: f64) -> RateSpec {
    RateSpec::new(GainFunction::constant(c), ComparisonNonlinearity::power(alpha).unwrap()).unwrap()
}

fn repeller() -> CaratheodoryMap {
    CaratheodoryMap::single_valued(1, GainFunction::constant(1.0), true, |_, x| x.to_vec()).unwrap()
}

fn zero_field() -> CaratheodoryMap {
    CaratheodoryMap::new(1, GainFunction::constant(0.0), true, |_, _| Ok(ConvexSet::singleton(vec![0.0]))).unwrap()
}

fn unit_grid() -> GridSpec {
    GridSpec::log_radial(1, 1e-3, 1.0, 12, 2, TimeSamples { start: 0.0, end: 1.0, count: 3 })
}

#[test]
fn epiderivative_examples() {
    let sq = LyapunovCandidate::norm_squared(1);
    assert_eq!(epiderivative(&sq, 0.4, &[1.0], &[1.0]).unwrap(), 2.0);
    assert_eq!(hypoderivative(&sq, 0.4, &[1.0], &[1.0]).unwrap(), 2.0);

    let abs = LyapunovCandidate::norm(1);
    // the direction ball allows |f'| ∈ [1 - h^{1/2}, 1 + h^{1/2}] at h = 1e-8
    assert!((epiderivative(&abs, 0.0, &[0.0], &[-1.0]).unwrap() - 1.0).abs() <= 1e-3 + 1e-12);
    assert!((hypoderivative(&abs, 0.0, &[0.0], &[1.0]).unwrap() - 1.0).abs() <= 1e-3 + 1e-12);

    let neg = LyapunovCandidate::new(1, |_, x: &[f64]| -x[0].abs());
    assert!((hypoderivative(&neg, 0.0, &[0.0], &[1.0]).unwrap() + 1.0).abs() <= 1e-3 + 1e-12);

    let fading = LyapunovCandidate::new(1, |t, x: &[f64]| (-t).exp() * x[0].abs());
    for t in [0.0, 0.5, 2.0] {
        let e = epiderivative(&fading, t, &[2.0], &[0.0]).unwrap();
        assert!((e + 2.0 * (-t).exp()).abs() < 1e-6, "t={t}: {e}");
    }
}

#[test]
fn weak_margin_examples() {
    let m = weak_condition_at(&LyapunovCandidate::norm(1), &sign_field(), &rate(1.0, 0.5), 0.0, &[0.25]).unwrap();
    assert!((m.margin + 0.5).abs() < 1e-9);
    assert!(m.holds());

    let m = weak_condition_at(&LyapunovCandidate::norm_squared(1), &repeller(), &rate(1.0, 0.5), 0.0, &[1.0]).unwrap();
    // g = v would be 2 + 1 = 3; with g = sqrt(v) also 3 at x = 1
    assert!((m.margin - 3.0).abs() < 1e-12);
    assert!(!m.holds());

    let m = weak_condition_at(&LyapunovCandidate::norm_squared(1), &zero_field(), &rate(0.0, 0.5), 0.0, &[0.7]).unwrap();
    assert_eq!(m.margin, 0.0);
}

#[test]
fn strong_margin_examples() {
    let m = strong_condition_at(&LyapunovCandidate::norm(1), &sign_field(), &rate(1.0, 0.5), 0.0, &[0.25]).unwrap();
    assert!((m.margin + 0.5).abs() < 1e-9);

    let scaled = CaratheodoryMap::new(1, GainFunction::constant(1.0), true, |_, x| {
        ConvexSet::new_box(vec![-x[0].abs()], vec![x[0].abs()])
    })
    .unwrap();
    let m = strong_condition_at(&LyapunovCandidate::norm_squared(1), &scaled, &rate(0.0, 0.5), 0.0, &[1.0]).unwrap();
    assert!((m.margin - 2.0).abs() < 1e-12);

    let m = strong_condition_at(&LyapunovCandidate::norm_squared(1), &zero_field(), &rate(0.0, 0.5), 0.0, &[0.3]).unwrap();
    assert_eq!(m.margin, 0.0);
}

#[test]
fn strong_mode_requires_lipschitz() {
    let v = LyapunovCandidate::norm_squared(1).lipschitz(false);
    let e = strong_condition_at(&v, &sign_field(), &rate(1.0, 0.5), 0.0, &[0.5]).unwrap_err();
    assert!(matches!(e, Error::MissingLipschitz));
    assert!(e.to_string().contains("locally Lipschitz continuous"));
    assert!(check_stability(&v, &sign_field(), &rate(1.0, 0.5), Mode::Strong, &unit_grid()).is_err());
    // the weak condition has no such requirement
    assert!(check_stability(&v, &sign_field(), &rate(1.0, 0.5), Mode::Weak, &unit_grid()).is_ok());
}

#[test]
fn check_stability_examples() {
    let ok = check_stability(&LyapunovCandidate::norm(1), &sign_field(), &rate(1.0, 0.5), Mode::Strong, &unit_grid()).unwrap();
    assert!(ok.pass && ok.evaluations == 12 * 2 * 3);

    let bad = check_stability(&LyapunovCandidate::norm_squared(1), &repeller(), &rate(1.0, 0.5), Mode::Weak, &unit_grid()).unwrap();
    assert!(!bad.pass);
    assert_eq!(bad.violations.len(), bad.evaluations);
    assert!(bad.violations.iter().all(|v| v.margin > 0.0));

    let empty = check_stability(&LyapunovCandidate::norm(1), &sign_field(), &rate(1.0, 0.5), Mode::Weak, &GridSpec::empty()).unwrap();
    assert!(empty.pass && empty.evaluations == 0 && !empty.warnings.is_empty());
}

#[test]
fn check_report_is_schedule_independent() {
    let run = || {
        check_stability(&LyapunovCandidate::norm_squared(1), &repeller(), &rate(1.0, 0.5), Mode::Strong, &unit_grid()).unwrap()
    };
    let a = serde_json::to_string(&run()).unwrap();
    for _ in 0..3 {
        assert_eq!(a, serde_json::to_string(&run()).unwrap());
    }
}

#[test]
fn basin_examples() {
    let v = LyapunovCandidate::norm_squared(2);
    let r = rate(1.0, 0.5);
    let b = basin_estimate(&v, &r, 0.0, 0.1, 10.0).unwrap();
    // bisection oracle on δ ↦ δ² - ε²/2
    let (mut lo, mut hi) = (0.0f64, 0.1f64);
    for _ in 0..100 {
        let mid = 0.5 * (lo + hi);
        if mid * mid - 0.01 / 2.0 < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    assert!((b.delta - lo).abs() < 1e-9);
    assert!(matches!(basin_estimate(&v, &r, 0.0, 20.0, 10.0), Err(Error::NoBasin(_))));
    let later = basin_estimate(&v, &r, 3.7, 0.1, 10.0).unwrap();
    assert_eq!(later.delta, b.delta);
}

#[test]
fn grid_excludes_origin_and_counts() {
    let g = GridSpec::log_radial(3, 1e-4, 0.5, 7, 8, TimeSamples { start: 0.0, end: 2.0, count: 4 });
    let pts = g.points().unwrap();
    assert_eq!(pts.len(), 7 * 8 * 4);
    for p in &pts {
        let r = fts_core::linalg::norm(&p.x);
        assert!((1e-4 * (1.0 - 1e-12)..=0.5 * (1.0 + 1e-12)).contains(&r));
    }
}

proptest! {
    #[test]
    fn gradient_path_matches_central_differences(
        x in proptest::collection::vec(-2.0f64..2.0, 2),
        f in proptest::collection::vec(-2.0f64..2.0, 2),
        t in 0.0f64..3.0,
    ) {
        let value = |t: f64, x: &[f64]| (1.0 + 0.3 * t.sin()) * (x[0] * x[0] + 2.0 * x[1] * x[1]) + x[0] * x[1];
        let v = LyapunovCandidate::new(2, value).with_gradient(move |t, x| {
            let s = 1.0 + 0.3 * t.sin();
            (
                0.3 * t.cos() * (x[0] * x[0] + 2.0 * x[1] * x[1]),
                vec![2.0 * s * x[0] + x[1], 4.0 * s * x[1] + x[0]],
            )
        });
        let h = 1e-5;
        let fd = (value(t + h, &[x[0] + h * f[0], x[1] + h * f[1]]) - value(t - h, &[x[0] - h * f[0], x[1] - h * f[1]]))
            / (2.0 * h);
        let e = epiderivative(&v, t, &x, &f).unwrap();
        prop_assert!((e - fd).abs() <= 1e-5 * (1.0 + fd.abs()));
        prop_assert_eq!(e, hypoderivative(&v, t, &x, &f).unwrap());
    }

    #[test]
    fn epi_below_hypo(x in -1.0f64..1.0, f in -2.0f64..2.0, k in 0.1f64..3.0) {
        let v = LyapunovCandidate::new(1, move |_, x: &[f64]| k * x[0].abs() + (x[0] - 0.2).max(0.0));
        let b = contingent_bounds(&v, 0.0, &[x], &[f]).unwrap();
        prop_assert!(b.epi <= b.hypo);
    }
}
