//! Lyapunov-condition checks for differential inclusions: contingent
//! derivative estimates, grid verification in weak or strong mode, and a
//! local basin estimate.

mod basin;
mod check;
mod derivative;
mod grid;
mod lyapunov;

pub use basin::{basin_estimate, BasinEstimate};
pub use check::{
    check_stability, default_tolerance, strong_condition_at, weak_condition_at, CheckReport, Margin, MarginStats,
    Mode, Violation,
};
pub use derivative::{contingent_bounds, epiderivative, hypoderivative, quotient_bounds, DerivativeBounds};
pub(crate) use grid::geometric;
pub use grid::{sphere_directions, GridPoint, GridSpec, TimeSamples};
pub use lyapunov::{CandidateReport, LyapunovCandidate, RateFunctionW};
