use fts_core::certifier::{LyapunovCandidate, RateFunctionW};
use fts_core::cli::sign_field;
use fts_core::comparison::{settling_time_bound, ComparisonNonlinearity, GainFunction, RateSpec};
use fts_core::integrator::*;
use fts_core::setvalued::{CaratheodoryMap, ConvexSet};
use fts_core::Error;
use proptest::prelude::*;

fn sqrt_rate() -> RateSpec {
    RateSpec::new(GainFunction::constant(1.0), ComparisonNonlinearity::power(0.5).unwrap()).unwrap()
}

fn zero_field() -> CaratheodoryMap {
    CaratheodoryMap::new(1, GainFunction::constant(0.0), true, |_, _| Ok(ConvexSet::singleton(vec![0.0]))).unwrap()
}

fn repeller() -> CaratheodoryMap {
    CaratheodoryMap::single_valued(1, GainFunction::constant(1.0), true, |_, x| x.to_vec()).unwrap()
}

fn ctrl() -> StepControl {
    StepControl::default()
}

#[test]
fn sign_system_follows_one_minus_t() {
    for sel in [
        SelectionStrategy::SteepestDescent,
        SelectionStrategy::Continuity,
        SelectionStrategy::FixedVertex { index: 0 },
        SelectionStrategy::RandomVertex { seed: 3 },
    ] {
        let tr = integrate(&sign_field(), sel, 0.0, &[1.0], 3.0, &ctrl(), None, None).unwrap();
        let settled = tr.settled_at.unwrap();
        assert!((settled - 1.0).abs() <= 2.0 * ctrl().eps_zero, "{sel:?}: {settled}");
        for (t, x) in tr.times.iter().zip(&tr.states) {
            // exact up to the final snap into the dead zone
            assert!((x[0] - (1.0 - t).max(0.0)).abs() <= ctrl().eps_zero);
        }
    }
}

#[test]
fn origin_is_settled_immediately() {
    let tr = integrate(&sign_field(), SelectionStrategy::SteepestDescent, 0.5, &[0.0], 3.0, &ctrl(), None, None).unwrap();
    assert_eq!(tr.settled_at, Some(0.5));
    assert_eq!(tr.len(), 1);
}

#[test]
fn zero_field_never_settles() {
    let tr = integrate(&zero_field(), SelectionStrategy::SteepestDescent, 0.0, &[1.0], 3.0, &ctrl(), None, None).unwrap();
    assert_eq!(tr.settled_at, None);
    assert!(tr.states.iter().all(|x| x[0] == 1.0));
    assert_eq!(*tr.times.last().unwrap(), 3.0);
}

#[test]
fn blow_up_is_reported() {
    // x' = x² outgrows the declared linear envelope
    let bad = CaratheodoryMap::single_valued(1, GainFunction::constant(1.0), true, |_, x| vec![x[0] * x[0]]).unwrap();
    let e = integrate(&bad, SelectionStrategy::SteepestDescent, 0.0, &[2.0], 3.0, &ctrl(), None, None).unwrap_err();
    assert!(matches!(e, Error::BlowUp { .. }), "{e}");
}

#[test]
fn csv_layout() {
    let v = LyapunovCandidate::norm(1);
    let tr = integrate(&sign_field(), SelectionStrategy::SteepestDescent, 0.0, &[1.0], 3.0, &ctrl(), Some(&v), Some(&sqrt_rate())).unwrap();
    let mut buf = Vec::new();
    tr.write_csv(&mut buf).unwrap();
    let text = String::from_utf8(buf).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("t,x_1,V,phi_bound,settled"));
    let last: Vec<&str> = text.lines().last().unwrap().split(',').collect();
    assert_eq!(last[4], "1");
    assert!((last[0].parse::<f64>().unwrap() - 1.0).abs() < 1e-5);
    assert_eq!(last[1].parse::<f64>().unwrap(), 0.0);
    assert!(text.lines().skip(1).take(tr.len() - 1).all(|l| l.ends_with(",0")));

    let bare = integrate(&zero_field(), SelectionStrategy::SteepestDescent, 0.0, &[1.0], 0.05, &ctrl(), None, None).unwrap();
    let mut buf = Vec::new();
    bare.write_csv(&mut buf).unwrap();
    assert!(String::from_utf8(buf).unwrap().lines().nth(1).unwrap().contains("NaN"));
}

#[test]
fn decrease_examples() {
    // x = e^{-t}, V = x², W = 2x²: equality
    let times: Vec<f64> = (0..=2000).map(|i| i as f64 * 1e-3).collect();
    let states = times.iter().map(|t| vec![(-t).exp()]).collect();
    let tr = Trajectory::from_samples(times.clone(), states).unwrap();
    let v = LyapunovCandidate::norm_squared(1);
    let w = RateFunctionW::new(GainFunction::constant(2.0), |_, x: &[f64]| 2.0 * x[0] * x[0]);
    let r = verify_decrease(&tr, &v, &w, 1e-6).unwrap();
    assert!(r.pass && r.worst_margin.abs() < 1e-6, "{r:?}");

    let flat = Trajectory::from_samples(times.clone(), times.iter().map(|_| vec![1.0]).collect()).unwrap();
    assert!(!verify_decrease(&flat, &v, &w, 1e-6).unwrap().pass);

    let none = RateFunctionW::new(GainFunction::constant(0.0), |_, _| 0.0);
    assert!(verify_decrease(&tr, &v, &none, 0.0).unwrap().pass);
}

#[test]
fn settling_examples() {
    let v = LyapunovCandidate::norm(1);
    let rate = sqrt_rate();
    let tr = integrate(&sign_field(), SelectionStrategy::SteepestDescent, 0.0, &[0.25], 2.0, &ctrl(), Some(&v), Some(&rate)).unwrap();
    let cert = settling_time_bound(&rate, 0.0, 0.25).unwrap();
    assert_eq!(cert.t_bound.finite(), Some(1.0));
    let verdict = verify_settling(&tr, &cert, &v, &rate, 1e-5).unwrap();
    assert!(verdict.pass);
    assert!((verdict.settled_at - 0.25).abs() <= 2.0 * ctrl().eps_zero);
    // φ(t) = (0.5 - t/2)² dominates |x(t)| = 0.25 - t
    for (t, x) in tr.times.iter().zip(&tr.states) {
        assert!(x[0].abs() <= (0.5 - t / 2.0).max(0.0).powi(2) + 1e-12);
    }

    let fading = RateSpec::new(GainFunction::exp(0.2, -0.5), ComparisonNonlinearity::power(0.5).unwrap()).unwrap();
    let unbounded = settling_time_bound(&fading, 0.0, 1.0).unwrap();
    assert!(matches!(verify_settling(&tr, &unbounded, &v, &rate, 1e-5), Err(Error::UnboundedCertificate)));

    // push one sample above φ by 2·tol
    let mut bumped = tr.clone();
    let k = bumped.len() / 2;
    let t = bumped.times[k];
    bumped.states[k][0] = (0.5 - t / 2.0).powi(2) + 2e-5;
    assert!(!verify_settling(&bumped, &cert, &v, &rate, 1e-5).unwrap().pass);
}

#[test]
fn sweep_examples() {
    let v = LyapunovCandidate::norm(1);
    let rate = sqrt_rate();
    let one = sweep_strong(&sign_field(), &v, &rate, 0.0, &[0.5], &ctrl(), 0, 3.0, 1).unwrap();
    assert_eq!(one.trajectories.len(), 1);
    let direct = integrate(&sign_field(), SelectionStrategy::FixedVertex { index: 0 }, 0.0, &[0.5], 3.0, &ctrl(), Some(&v), Some(&rate)).unwrap();
    assert_eq!(one.trajectories[0].states, direct.states);
    assert!(one.summary.all_settled && one.summary.all_before_bound);

    let sq = LyapunovCandidate::norm_squared(1);
    let rep = sweep_strong(&repeller(), &sq, &rate, 0.0, &[0.5], &ctrl(), 2, 2.0, 1).unwrap();
    assert!(!rep.summary.all_settled);
    assert!(rep.summary.runs.iter().all(|r| r.settled_at.is_none()));
}

#[test]
fn selection_strings() {
    assert_eq!("steepest".parse::<SelectionStrategy>().unwrap(), SelectionStrategy::SteepestDescent);
    assert_eq!("fixed:2".parse::<SelectionStrategy>().unwrap(), SelectionStrategy::FixedVertex { index: 2 });
    assert_eq!("random:9".parse::<SelectionStrategy>().unwrap(), SelectionStrategy::RandomVertex { seed: 9 });
    assert!("wobbly".parse::<SelectionStrategy>().is_err());
}

#[test]
fn bad_step_control_rejected() {
    let c = StepControl { min: 1.0, ..StepControl::default() };
    assert!(integrate(&sign_field(), SelectionStrategy::SteepestDescent, 0.0, &[1.0], 1.0, &c, None, None).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn sign_settles_at_initial_distance(x0 in -2.0f64..2.0, seed in 0u64..1000) {
        prop_assume!(x0.abs() > 1e-3);
        let tr = integrate(&sign_field(), SelectionStrategy::RandomVertex { seed }, 0.0, &[x0], 3.0, &ctrl(), None, None).unwrap();
        prop_assert!((tr.settled_at.unwrap() - x0.abs()).abs() <= 2.0 * ctrl().eps_zero);
        prop_assert!(tr.consistency_residual() <= 1e-9);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn random_selection_reproducible(seed in 0u64..1000) {
        let map = fts_core::hopfield::HopfieldSystem::build(fts_core::hopfield::HopfieldSpec::reference()).unwrap();
        let run = || integrate(&map.inclusion, SelectionStrategy::RandomVertex { seed }, 0.0, &[0.004, 0.003], 0.5, &ctrl(), None, None).unwrap();
        prop_assert_eq!(run().states, run().states);
    }
}
