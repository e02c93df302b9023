use thiserror::Error;

/// Domain errors for the core geometric operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum CoreError {
    /// Dilations are only defined for strictly positive factors.
    #[error("dilation factor must be positive, got {0}")]
    NonPositiveDilation(f64),
    /// The operation needs a line expressible as a graph over the y-axis.
    #[error("line is parallel to the xt-plane; finite slope required")]
    InfiniteSlope,
    /// Two points with (nearly) equal y cannot fix a y-graph direction.
    #[error("points have equal y-coordinates; direction undetermined")]
    DegenerateDirection,
}
