//! `x' ∈ -Filippov[sign](x)` from `x0 = 1`: settles at `t = 1`, inside the
//! certificate `T = 2`, with `V = |x|` under the comparison solution.

use fts_core::certifier::{LyapunovCandidate, RateFunctionW};
use fts_core::cli::sign_field;
use fts_core::comparison::{settling_time_bound, ComparisonNonlinearity, GainFunction, RateSpec};
use fts_core::integrator::{integrate, verify_decrease, verify_settling, SelectionStrategy, StepControl};

pub fn run() -> fts_core::Result<()> {
    let map = sign_field();
    let v = LyapunovCandidate::norm(1);
    let rate = RateSpec::new(GainFunction::constant(1.0), ComparisonNonlinearity::power(0.5)?)?;
    for max in [1e-2, 5e-3] {
        let ctrl = StepControl::default().with_max_step(max);
        let tr = integrate(&map, SelectionStrategy::SteepestDescent, 0.0, &[1.0], 3.0, &ctrl, Some(&v), Some(&rate))?;
        println!("max step {max}: settled at {:?} after {} samples", tr.settled_at, tr.len());
        if max == 1e-2 {
            let cert = settling_time_bound(&rate, 0.0, 1.0)?;
            let verdict = verify_settling(&tr, &cert, &v, &rate, 1e-5)?;
            println!("  certificate {:?}, verdict pass={}", cert.t_bound, verdict.pass);
            let w = RateFunctionW::from_rate(&v, &rate, GainFunction::constant(1.0));
            println!("  integral decrease pass={}", verify_decrease(&tr, &v, &w, 1e-6)?.pass);
            let mut csv = Vec::new();
            tr.write_csv(&mut csv)?;
            let text = String::from_utf8(csv).expect("utf-8");
            println!("  last CSV row: {}", text.lines().last().unwrap_or_default());
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> fts_core::Result<()> {
    run()
}
