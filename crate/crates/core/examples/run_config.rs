//! JSON run configs drive the `fts` binary; the same commands are plain
//! library calls returning a serializable report.

use fts_core::certifier::Mode;
use fts_core::cli::{cmd_check, cmd_settle_bound, cmd_simulate, RunConfig};

pub fn run() -> fts_core::Result<()> {
    let cfg = RunConfig::from_json(r#"{"system": "sign-1d", "initial": [[1.0], [0.0]], "seed": 1}"#)?;
    println!("config hash {}", cfg.hash());

    let sim = cmd_simulate(&cfg, None);
    for t in &sim.trajectories {
        println!("x0={:?}: settled at {:?} ({} samples)", t.x0, t.settled_at, t.samples);
    }
    println!("simulate exit code {}", sim.exit_code);

    let repeller = RunConfig::from_json(r#"{"system": "repeller"}"#)?;
    println!("repeller check exit code {}", cmd_check(&repeller, Mode::Weak).exit_code);

    let unbounded = RunConfig::from_json(
        r#"{"system": "sign-1d", "v0": 1.0,
            "rate": {"c": {"kind": "exp", "delta": 0.2, "rate": -0.5}, "g": {"kind": "power", "alpha": 0.5}}}"#,
    )?;
    let r = cmd_settle_bound(&unbounded, true);
    println!("fading gain, v0=1: exit code {} ({:?})", r.exit_code, r.messages);
    Ok(())
}

#[allow(dead_code)]
fn main() -> fts_core::Result<()> {
    run()
}
