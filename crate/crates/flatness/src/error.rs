use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum FlatError {
    #[error("need at least {need} points, got {got}")]
    TooFewPoints { need: usize, got: usize },
    #[error("sampling budget too small: {0}")]
    BudgetTooSmall(&'static str),
    #[error("walk depth {0} exceeds the cost guard")]
    DepthTooDeep(u32),
    #[error("interval length must be positive, got {0}")]
    BadInterval(f64),
    #[error("ball enlargement must be positive, got {0}")]
    BadEnlargement(f64),
}
