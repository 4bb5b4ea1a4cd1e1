//! Gronwall-type domination checks on sampled functions.

use fts_core::comparison::{
    check_comparison, check_gronwall_power, comparison_solution, ComparisonNonlinearity, GainFunction, RateSpec,
    SampledFunction,
};

pub fn run() -> fts_core::Result<()> {
    let c = GainFunction::constant(1.0);
    let rate = RateSpec::new(c.clone(), ComparisonNonlinearity::power(0.5)?)?;
    let times: Vec<f64> = (0..=300).map(|i| i as f64 * 0.01).collect();
    let phi = SampledFunction::from_fn(times.clone(), |t| comparison_solution(&rate, 0.0, 1.0, t).unwrap())?;
    // a faster decay from the same start is dominated
    let faster = rate.scaled(1.2);
    let below = SampledFunction::from_fn(times.clone(), |t| comparison_solution(&faster, 0.0, 1.0, t).unwrap())?;
    let stuck = SampledFunction::from_fn(times, |_| 1.0)?;

    for (name, w) in [("phi", &phi), ("faster", &below), ("constant", &stuck)] {
        let power = check_gronwall_power(w, &c, 0.5, 1e-9)?;
        let dom = check_comparison(w, &rate, 1e-9)?;
        println!(
            "{name:>10}: power form pass={} comparison pass={} first violation={:?}",
            power.pass, dom.pass, power.first_violation
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> fts_core::Result<()> {
    run()
}
