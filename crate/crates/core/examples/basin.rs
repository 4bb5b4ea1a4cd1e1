//! Initial radius `δ` whose solutions stay in the `ε`-ball and settle.

use fts_core::certifier::{basin_estimate, LyapunovCandidate};
use fts_core::comparison::{ComparisonNonlinearity, GainFunction, RateSpec};

pub fn run() -> fts_core::Result<()> {
    let v = LyapunovCandidate::norm_squared(2);
    let rate = RateSpec::new(GainFunction::constant(1.0), ComparisonNonlinearity::power(0.5)?)?;
    for eps in [0.05, 0.1, 0.5] {
        let b = basin_estimate(&v, &rate, 0.0, eps, 10.0)?;
        println!(
            "eps={eps}: delta={:.6} (eps/sqrt2 = {:.6}) horizon={:.4}",
            b.delta,
            eps / 2f64.sqrt(),
            b.horizon
        );
    }
    match basin_estimate(&v, &rate, 0.0, 20.0, 10.0) {
        Err(e) => println!("eps beyond the domain: {e}"),
        Ok(b) => println!("unexpected basin {b:?}"),
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> fts_core::Result<()> {
    run()
}
