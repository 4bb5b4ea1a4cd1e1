//! Two-neuron Hopfield network with sign self-inhibition and jumping
//! activations: paper inequality, strong check, basin, and a selection sweep.

use fts_core::hopfield::{demo, DemoOptions, HopfieldSpec, HopfieldSystem};
use fts_core::integrator::StepControl;

pub fn run() -> fts_core::Result<()> {
    let sys = HopfieldSystem::build(HopfieldSpec::reference())?;
    let grid = sys.default_grid();
    let paper = sys.verify_paper_inequality(&grid)?;
    println!(
        "decrease inequality on {} points: pass={} (worst margin {:.3e})",
        paper.evaluations,
        paper.pass,
        paper.stats.as_ref().map_or(f64::NAN, |s| s.max)
    );

    let x0 = [0.008, -0.006];
    let report = demo(&sys, 0.0, &x0, &StepControl::default(), &DemoOptions::default())?;
    if let Some(b) = &report.basin {
        println!("basin: eps={} delta={:.4e} horizon={:.3}", b.epsilon, b.delta, b.horizon);
    }
    println!(
        "x0={x0:?} inside basin={} T_bound={:?} runs={} latest settle={:?} pass={}",
        report.inside_basin,
        report.certificate.t_bound,
        report.sweep.runs.len(),
        report.sweep.max_settled_at,
        report.pass
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> fts_core::Result<()> {
    run()
}
