use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum GridError {
    #[error("generation {0} outside the exact range")]
    GenerationOutOfRange(i64),
    #[error("ball radius must be positive, got {0}")]
    NonPositiveRadius(f64),
    #[error("rectangle has generation {got}, expected {expected}")]
    GenerationMismatch { expected: i32, got: i32 },
    #[error("point is not a corner of the required generation")]
    CornerOffLattice,
    #[error("point lies on none of the given lines")]
    CornerNotOnLines,
    #[error("lines are not five consecutive members of one lattice")]
    LinesNotConsecutive,
    #[error("second and fourth line must belong to the coarser lattice")]
    MidLinesNotCoarser,
}
