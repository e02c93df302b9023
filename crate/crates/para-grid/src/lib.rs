//! Dyadic combinatorics of the parabolic plane: rectangles with side ratio
//! `2^-n x 4^-n`, the horizontal line lattices they hang on, and the
//! corner/edge lemmas relating a rectangle's corners to coarser lattices.
//!
//! Everything here is exact integer arithmetic; floats appear only when a
//! rectangle is converted to its geometric realization. All values are
//! immutable and the functions are pure.

pub mod error;
pub mod lemmas;
pub mod line;
pub mod rect;

pub use error::GridError;
pub use lemmas::{edge_line_of, parent_corner_lines};
pub use line::{DyadicLine, MAX_LINE_GEN};
pub use rect::{ParaRect, MAX_GEN};
