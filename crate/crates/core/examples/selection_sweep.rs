//! Strong stability is about every solution: sweep vertex and random
//! selections of a box-valued field and compare against one bound.

use fts_core::certifier::LyapunovCandidate;
use fts_core::comparison::{ComparisonNonlinearity, GainFunction, RateSpec};
use fts_core::integrator::{sweep_strong, StepControl};
use fts_core::setvalued::{filippov_interval, product_box, Interval, MonotoneScalarFunction};
use fts_core::setvalued::CaratheodoryMap;

pub fn run() -> fts_core::Result<()> {
    // x_i' ∈ -Filippov[sign](x_i) + [-0.3, 0.3]
    let sign = MonotoneScalarFunction::sign(1.0);
    let map = CaratheodoryMap::new(2, GainFunction::constant(1.3), true, move |_, x| {
        let iv: Vec<Interval> = x
            .iter()
            .map(|&xi| {
                let s = filippov_interval(&sign, xi);
                Interval::new(-s.hi - 0.3, -s.lo + 0.3)
            })
            .collect();
        product_box(&iv)
    })?;
    // every selection has <x/|x|, f> ≤ -0.7 |x|_1/|x| ≤ -0.7, which beats
    // 0.5 sqrt|x| while |x| < 1.96
    let v = LyapunovCandidate::norm(2);
    let rate = RateSpec::new(GainFunction::constant(0.5), ComparisonNonlinearity::power(0.5)?)?;
    let res = sweep_strong(&map, &v, &rate, 0.0, &[0.6, -0.4], &StepControl::default(), 6, 4.0, 7)?;
    let s = &res.summary;
    println!("T_bound = {:?}", s.certificate.t_bound);
    for r in &s.runs {
        println!("  {:?}: settled at {:?}, sup |x| = {:.4}", r.strategy, r.settled_at, r.sup_norm);
    }
    println!("all settled={} all before bound={}", s.all_settled, s.all_before_bound);
    Ok(())
}

#[allow(dead_code)]
fn main() -> fts_core::Result<()> {
    run()
}
