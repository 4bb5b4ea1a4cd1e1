//! Trajectories of `x' ∈ F(t, x)` by explicit Euler with vertex selection,
//! a dead zone at the origin, and checks of the decrease and settling
//! inequalities along the result.

mod selection;
mod stepper;
mod sweep;
mod trajectory;
mod verify;

pub use selection::SelectionStrategy;
pub use stepper::{integrate, StepControl};
pub use sweep::{sweep_strong, RunSummary, SweepResult, SweepSummary};
pub use trajectory::Trajectory;
pub use verify::{verify_decrease, verify_settling, DecreaseReport, SettlingVerdict};
