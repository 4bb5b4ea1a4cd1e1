//! Hopfield networks with discontinuous activations as differential
//! inclusions, with the Lyapunov function and rate of their finite-time
//! stability argument.

mod shape;
mod spec;
mod system;

pub use shape::{Neuron, Shape};
pub use spec::HopfieldSpec;
pub use system::{demo, DemoOptions, DemoReport, HopfieldSystem};
