use fts_core::certifier::{check_stability, weak_condition_at, GridPoint, GridSpec, Mode, TimeSamples};
use fts_core::hopfield::*;
use fts_core::integrator::StepControl;
use fts_core::Error;
use proptest::prelude::*;

fn scalar() -> HopfieldSpec {
    HopfieldSpec::scalar(0.5, 0.2, 0.5, 1.0, 0.3, 0.3)
}

fn grid_1d(rho: f64, n: usize) -> GridSpec {
    // 10 times × 2 directions × n/20 shells
    GridSpec::log_radial(1, 1e-4, rho * (1.0 - 1e-9), n / 20, 2, TimeSamples { start: 0.0, end: 1.0, count: 10 })
}

#[test]
fn tail_mass_closed_form() {
    let sys = HopfieldSystem::build(scalar()).unwrap();
    assert!((sys.tail_mass(0.0) - 0.4).abs() < 1e-14);
    // δ/(1-α) e^{(α-1) t0}
    assert!((sys.tail_mass(2.0) - 0.4 * (-1.0f64).exp()).abs() < 1e-14);
}

#[test]
fn nonzero_input_rejected_first() {
    let spec = HopfieldSpec { input: vec![0.1], ..scalar() };
    match HopfieldSystem::build(spec) {
        Err(Error::AssumptionViolation { inequality, .. }) => assert_eq!(inequality, "I(t) = 0"),
        other => panic!("expected an assumption violation, got {other:?}"),
    }
}

#[test]
fn scalar_instance_validates_and_passes() {
    let sys = HopfieldSystem::build(scalar()).unwrap();
    let r = sys.verify_paper_inequality(&grid_1d(0.5, 1000)).unwrap();
    assert_eq!(r.evaluations, 1000);
    assert!(r.pass, "{:?}", r.violations.first());
}

#[test]
fn balance_condition_is_enforced() {
    let spec = HopfieldSpec { delta: 2.0, ..scalar() };
    match HopfieldSystem::build(spec.clone()) {
        Err(Error::AssumptionViolation { inequality, .. }) => assert!(inequality.contains("rho^(2(1-alpha))")),
        other => panic!("expected an assumption violation, got {other:?}"),
    }
    let sys = HopfieldSystem::build_unvalidated(spec).unwrap();
    let r = sys.verify_paper_inequality(&grid_1d(0.5, 1000)).unwrap();
    assert!(!r.pass);
    let w = &r.violations[0];
    assert!(w.margin > 0.0 && w.x[0] != 0.0);
}

#[test]
fn single_vertex_matches_certifier() {
    let sys = HopfieldSystem::build(scalar()).unwrap();
    for x in [0.25, -0.25] {
        let paper = sys.paper_margin(0.0, &[x]).unwrap();
        let weak = weak_condition_at(&sys.v, &sys.inclusion, &sys.rate, 0.0, &[x]).unwrap();
        assert!((paper.margin - weak.margin).abs() <= 1e-8, "{} vs {}", paper.margin, weak.margin);
    }
    let grid = GridSpec::Explicit { points: vec![GridPoint { t: 0.0, x: vec![0.25] }] };
    assert!(sys.verify_paper_inequality(&grid).unwrap().pass);
}

#[test]
fn reference_instance_strong_check() {
    let sys = HopfieldSystem::build(HopfieldSpec::reference()).unwrap();
    let r = check_stability(&sys.v, &sys.inclusion, &sys.rate, Mode::Strong, &sys.default_grid()).unwrap();
    assert!(r.pass);
}

#[test]
fn candidate_vanishes_at_origin() {
    let sys = HopfieldSystem::build(HopfieldSpec::reference()).unwrap();
    assert_eq!(sys.v.value(0.3, &[0.0, 0.0]), 0.0);
    let mut prev = 0.0;
    for k in 1..40 {
        let r = 0.3 * k as f64 / 40.0;
        let v = sys.v.value(0.0, &[r, 0.0]);
        assert!(v > prev);
        prev = v;
    }
}

#[test]
fn demo_scalar_example() {
    let sys = HopfieldSystem::build(scalar()).unwrap();
    let d = demo(&sys, 0.0, &[0.1], &StepControl::default(), &DemoOptions::default()).unwrap();
    let t_bound = d.certificate.t_bound.finite().unwrap();
    // closed-form bound: 0.4 (1 - e^{-T/2}) = G(V(0, 0.1))
    let g = 2.0 * sys.v.value(0.0, &[0.1]).sqrt();
    assert!((t_bound + 2.0 * (1.0 - g / 0.4).ln()).abs() < 1e-9);
    assert!(d.sweep.all_settled && d.sweep.all_before_bound);
    assert!(d.verdicts.iter().all(|v| v.pass));
}

#[test]
fn demo_from_origin() {
    let sys = HopfieldSystem::build(scalar()).unwrap();
    let d = demo(&sys, 0.0, &[0.0], &StepControl::default(), &DemoOptions::default()).unwrap();
    assert!(d.sweep.runs.iter().all(|r| r.settled_at == Some(0.0)));
    assert!(d.pass);
}

#[test]
fn demo_degrades_without_certificate() {
    let sys = HopfieldSystem::build(scalar()).unwrap();
    let x0 = [0.45];
    assert!(2.0 * sys.v.value(0.0, &x0).sqrt() >= sys.tail_mass(0.0));
    let d = demo(&sys, 0.0, &x0, &StepControl::default(), &DemoOptions::default()).unwrap();
    assert!(!d.certificate.t_bound.is_finite());
    assert!(d.verdicts.is_empty());
    assert!(d.warnings.iter().any(|w| w.contains("unbounded")), "{:?}", d.warnings);
    assert!(!d.pass);
}

#[test]
fn spec_json_round_trip() {
    let spec = HopfieldSpec::reference();
    let text = serde_json::to_string(&spec).unwrap();
    assert_eq!(serde_json::from_str::<HopfieldSpec>(&text).unwrap(), spec);
}

#[test]
fn nonpositive_candidate_rejected() {
    // for α = 0.8 the candidate is negative at |x| = 0.1
    let spec = HopfieldSpec::scalar(0.8, 0.1, 0.1, 0.5, 0.0, 0.0);
    match HopfieldSystem::build(spec) {
        Err(Error::AssumptionViolation { inequality, .. }) => assert_eq!(inequality, "|x| > exp(-|x|^(alpha-1))"),
        other => panic!("expected an assumption violation, got {other:?}"),
    }
}

/// Largest ρ with `(1/r + (1-α) r^{α-2}) e^{-r^{α-1}} ≤ 1` on `(0, ρ)`: the
/// "sufficiently small ρ" under which the decrease inequality is proved.
fn small_rho(alpha: f64) -> f64 {
    let k = |r: f64| (1.0 / r + (1.0 - alpha) * r.powf(alpha - 2.0)) * (-r.powf(alpha - 1.0)).exp();
    (0..4000)
        .map(|i| 10f64.powf(-6.0 + 6.0 * i as f64 / 4000.0))
        .take_while(|&r| k(r) <= 1.0)
        .last()
        .unwrap_or(0.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    // h = a sign(x)|x|^{2α-1} needs α ≥ 1/2 to stay bounded near 0
    #[test]
    fn small_ball_instances_satisfy_inequality(alpha in 0.5f64..0.6, a in 0.5f64..2.0, b in 0.0f64..1.0,
                                               frac in 0.1f64..1.0, w in 0.0f64..1.0) {
        let rho = frac * small_rho(alpha);
        let slack = a - b * rho.powf(2.0 * (1.0 - alpha));
        let spec = HopfieldSpec::scalar(alpha, 0.9 * slack, rho, a, w.min(b), b);
        let sys = HopfieldSystem::build(spec).unwrap();
        prop_assert!(sys.verify_paper_inequality(&grid_1d(rho, 200)).unwrap().pass);
    }
}
