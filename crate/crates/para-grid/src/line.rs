//! Dyadic horizontal lines: `t = k * 2^-n` in the parabolic plane. The
//! generation-n lattice refines into generation n+1 by index doubling.

use crate::error::GridError;

/// Lines must express rectangle edges down to generation 30, whose spacing
/// is `4^-30 = 2^-60`.
pub const MAX_LINE_GEN: i32 = 62;

/// The horizontal line `t = k * 2^-n`, a member of the generation-n lattice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct DyadicLine {
    n: i32,
    k: i64,
}

impl DyadicLine {
    pub fn new(n: i32, k: i64) -> Result<Self, GridError> {
        if n.unsigned_abs() > MAX_LINE_GEN as u32 {
            return Err(GridError::GenerationOutOfRange(n as i64));
        }
        Ok(DyadicLine { n, k })
    }

    pub fn generation(self) -> i32 {
        self.n
    }

    pub fn index(self) -> i64 {
        self.k
    }

    /// Height of the line.
    pub fn t(self) -> f64 {
        self.k as f64 * (-self.n as f64).exp2()
    }

    /// Next line up within the same generation, `t + 2^-n`.
    pub fn up(self) -> DyadicLine {
        DyadicLine { n: self.n, k: self.k + 1 }
    }

    /// Next line down within the same generation, `t - 2^-n`.
    pub fn down(self) -> DyadicLine {
        DyadicLine { n: self.n, k: self.k - 1 }
    }

    /// Same line, re-indexed in a finer generation `m >= n`.
    pub fn refined(self, m: i32) -> Result<DyadicLine, GridError> {
        if m < self.n {
            return Err(GridError::GenerationOutOfRange(m as i64));
        }
        let shift = (m - self.n) as u32;
        if shift > 62 {
            return Err(GridError::GenerationOutOfRange(m as i64));
        }
        DyadicLine::new(m, self.k << shift)
    }

    /// Whether the line belongs to the generation-m lattice. Coarser
    /// lattices contain it only when the index divides out.
    pub fn member_of(self, m: i32) -> bool {
        if m >= self.n {
            return true;
        }
        let shift = (self.n - m) as u32;
        shift <= 62 && self.k.rem_euclid(1 << shift) == 0
    }

    /// Geometrically equal lines compare equal regardless of indexing.
    pub fn same_line(self, other: DyadicLine) -> bool {
        let m = self.n.max(other.n);
        match (self.refined(m), other.refined(m)) {
            (Ok(a), Ok(b)) => a == b,
            _ => false,
        }
    }
}
