//! One neuron `x' = b x - a sign(x)|x|^{2α-1}`: validation, the closed-form
//! tail mass, and what happens when `δ` is pushed past feasibility.

use fts_core::hopfield::{demo, DemoOptions, HopfieldSpec, HopfieldSystem};
use fts_core::integrator::StepControl;

pub fn run() -> fts_core::Result<()> {
    let spec = HopfieldSpec::scalar(0.5, 0.2, 0.5, 1.0, 0.3, 0.3);
    let sys = HopfieldSystem::build(spec.clone())?;
    println!("tail mass at t0=0: {}", sys.tail_mass(0.0));

    let report = demo(&sys, 0.0, &[0.1], &StepControl::default(), &DemoOptions::default())?;
    println!(
        "x0=0.1: T_bound={:?}, latest settle={:?}, inside computed basin={}, pass={}",
        report.certificate.t_bound, report.sweep.max_settled_at, report.inside_basin, report.pass
    );
    for w in &report.warnings {
        println!("  warning: {w}");
    }

    let inflated = HopfieldSpec { delta: 2.0, ..spec };
    match HopfieldSystem::build(inflated.clone()) {
        Err(e) => println!("delta=2.0 rejected: {e}"),
        Ok(_) => println!("delta=2.0 unexpectedly accepted"),
    }
    let sys = HopfieldSystem::build_unvalidated(inflated)?;
    let check = sys.verify_paper_inequality(&sys.default_grid())?;
    println!("unvalidated delta=2.0: decrease inequality pass={}", check.pass);
    Ok(())
}

#[allow(dead_code)]
fn main() -> fts_core::Result<()> {
    run()
}
