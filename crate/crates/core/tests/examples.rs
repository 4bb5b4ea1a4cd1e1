//! Every example must run to completion.

#[path = "../examples/basin.rs"]
mod basin;
#[path = "../examples/contingent_derivatives.rs"]
mod contingent_derivatives;
#[path = "../examples/filippov_sets.rs"]
mod filippov_sets;
#[path = "../examples/gronwall_check.rs"]
mod gronwall_check;
#[path = "../examples/hopfield_reference.rs"]
mod hopfield_reference;
#[path = "../examples/hopfield_scalar.rs"]
mod hopfield_scalar;
#[path = "../examples/run_config.rs"]
mod run_config;
#[path = "../examples/selection_sweep.rs"]
mod selection_sweep;
#[path = "../examples/settling_bound.rs"]
mod settling_bound;
#[path = "../examples/sign_system.rs"]
mod sign_system;
#[path = "../examples/stability_check.rs"]
mod stability_check;

#[test]
fn basin_runs() {
    basin::run().unwrap();
}

#[test]
fn contingent_derivatives_runs() {
    contingent_derivatives::run().unwrap();
}

#[test]
fn filippov_sets_runs() {
    filippov_sets::run().unwrap();
}

#[test]
fn gronwall_check_runs() {
    gronwall_check::run().unwrap();
}

#[test]
fn hopfield_reference_runs() {
    hopfield_reference::run().unwrap();
}

#[test]
fn hopfield_scalar_runs() {
    hopfield_scalar::run().unwrap();
}

#[test]
fn run_config_runs() {
    run_config::run().unwrap();
}

#[test]
fn selection_sweep_runs() {
    selection_sweep::run().unwrap();
}

#[test]
fn settling_bound_runs() {
    settling_bound::run().unwrap();
}

#[test]
fn sign_system_runs() {
    sign_system::run().unwrap();
}

#[test]
fn stability_check_runs() {
    stability_check::run().unwrap();
}
