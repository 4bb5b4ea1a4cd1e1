//! Compact convex sets, Carathéodory set-valued maps and Filippov
//! regularization of monotone discontinuous functions.

mod convex;
mod filippov;
mod map;
pub mod projection;

pub use convex::{point_set_distance, product_box, support_value, vertices, ConvexSet, Interval, VERTEX_DIM_CAP};
pub use filippov::{filippov_interval, Jump, JumpInfo, MonotoneScalarFunction};
pub use map::CaratheodoryMap;
