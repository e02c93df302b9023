use thiserror::Error;

/// Failure modes of the projected-image analysis.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum ProjError {
    #[error("a closed loop needs at least 4 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("loop vertices must have finite coordinates")]
    NonFiniteVertex,
    #[error("loop must close: first and last vertices differ")]
    NotClosed,
    #[error("probe point lies on the loop")]
    OnBoundary,
    #[error("sampling budget too small: {0}")]
    BudgetTooSmall(&'static str),
    #[error("box is degenerate: {0}")]
    BadBox(&'static str),
    #[error("rug is not flat enough over this window: {0}")]
    NotFlatEnough(&'static str),
}
