//! Pointwise weak/strong decrease margins and grid checks, including a
//! repeller that must fail.

use fts_core::certifier::{
    check_stability, strong_condition_at, weak_condition_at, GridSpec, LyapunovCandidate, Mode, TimeSamples,
};
use fts_core::cli::sign_field;
use fts_core::comparison::{ComparisonNonlinearity, GainFunction, RateSpec};
use fts_core::setvalued::CaratheodoryMap;

pub fn run() -> fts_core::Result<()> {
    let rate = RateSpec::new(GainFunction::constant(1.0), ComparisonNonlinearity::power(0.5)?)?;
    let field = sign_field();
    let abs = LyapunovCandidate::norm(1);
    println!(
        "sign field, V=|x|, x=0.25: weak {:.6} strong {:.6}",
        weak_condition_at(&abs, &field, &rate, 0.0, &[0.25])?.margin,
        strong_condition_at(&abs, &field, &rate, 0.0, &[0.25])?.margin
    );

    let grid = GridSpec::log_radial(1, 1e-4, 1.0, 20, 2, TimeSamples { start: 0.0, end: 1.0, count: 5 });
    let ok = check_stability(&abs, &field, &rate, Mode::Strong, &grid)?;
    println!("sign field strong check: pass={} on {} points", ok.pass, ok.evaluations);

    let repeller = CaratheodoryMap::single_valued(1, GainFunction::constant(1.0), true, |_, x| x.to_vec())?;
    let bad = check_stability(&LyapunovCandidate::norm_squared(1), &repeller, &rate, Mode::Weak, &grid)?;
    println!(
        "repeller weak check: pass={} violations={} first witness={:?}",
        bad.pass,
        bad.violations.len(),
        bad.violations.first().map(|v| (&v.x, v.margin))
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> fts_core::Result<()> {
    run()
}
