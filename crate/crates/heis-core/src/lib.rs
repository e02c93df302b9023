//! Geometry of the first Heisenberg group and of the parabolic plane.
//!
//! Points carry coordinates `(x, y, t)` where `x`, `y` scale like length and
//! `t` scales like length squared. The group product, the homogeneous norm,
//! dilations, rotations about the vertical axis, and the two splitting
//! projections (onto the `yt`-plane and onto the `x`-axis) live in [`point`].
//! Horizontal lines, their parametrizations, snapping, and point-to-line
//! distance live in [`line`]; vertical planes in [`plane`]; the parabolic
//! plane with its `max(|dy|, sqrt|dt|)` metric in [`para`].
//!
//! Every type here is an immutable value and every operation is a pure
//! function, so the whole surface is safe to share across threads.

mod error;
pub mod line;
pub mod para;
pub mod plane;
pub mod point;

pub use error::CoreError;
pub use line::{HorizontalLine, Line, XtParallelLine, SNAP_FACTOR};
pub use para::{ParaBall, ParaPoint};
pub use plane::VerticalPlane;
pub use point::HPoint;

/// Absolute tolerance used by float assertions on unit-scale quantities.
pub const UNIT_TOL: f64 = 1e-12;
