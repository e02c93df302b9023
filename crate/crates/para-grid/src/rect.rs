//! Parabolic dyadic rectangles `[k 2^-n, (k+1) 2^-n) x [l 4^-n, (l+1) 4^-n)`.

use crate::error::GridError;
use crate::line::DyadicLine;
use heis_core::{ParaBall, ParaPoint};

/// Rectangle generations stay within `|n| <= 30` so that `4^-n` and every
/// corner coordinate in the working window are exact floats.
pub const MAX_GEN: i32 = 30;

/// A generation-n rectangle of the parabolic grid, column k, row l. Its side
/// length is `len() = 2^-n` in the parabolic metric and its area is `8^-n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ParaRect {
    n: i32,
    k: i64,
    l: i64,
}

impl ParaRect {
    pub fn new(n: i32, k: i64, l: i64) -> Result<Self, GridError> {
        if n.unsigned_abs() > MAX_GEN as u32 {
            return Err(GridError::GenerationOutOfRange(n as i64));
        }
        Ok(ParaRect { n, k, l })
    }

    /// The unit square `[0,1) x [0,1)`.
    pub fn unit() -> Self {
        ParaRect { n: 0, k: 0, l: 0 }
    }

    pub fn generation(self) -> i32 {
        self.n
    }

    pub fn col(self) -> i64 {
        self.k
    }

    pub fn row(self) -> i64 {
        self.l
    }

    /// Side length `2^-n`; equals the parabolic diameter.
    pub fn len(self) -> f64 {
        (-self.n as f64).exp2()
    }

    /// Lebesgue measure `8^-n`.
    pub fn measure(self) -> f64 {
        (-3.0 * self.n as f64).exp2()
    }

    pub fn y_interval(self) -> (f64, f64) {
        let s = self.len();
        (self.k as f64 * s, (self.k + 1) as f64 * s)
    }

    pub fn t_interval(self) -> (f64, f64) {
        let s = self.len() * self.len();
        (self.l as f64 * s, (self.l + 1) as f64 * s)
    }

    pub fn center(self) -> ParaPoint {
        let s = self.len();
        ParaPoint::new(
            (self.k as f64 + 0.5) * s,
            (self.l as f64 + 0.5) * s * s,
        )
    }

    /// Half-open membership, matching the dyadic partition.
    pub fn contains(self, w: ParaPoint) -> bool {
        let (y0, y1) = self.y_interval();
        let (t0, t1) = self.t_interval();
        y0 <= w.y && w.y < y1 && t0 <= w.t && w.t < t1
    }

    /// The four corner points, lower edge first, left before right.
    pub fn corners(self) -> [ParaPoint; 4] {
        let (y0, y1) = self.y_interval();
        let (t0, t1) = self.t_interval();
        [
            ParaPoint::new(y0, t0),
            ParaPoint::new(y1, t0),
            ParaPoint::new(y0, t1),
            ParaPoint::new(y1, t1),
        ]
    }

    /// Lines through the horizontal edges, as generation-2n lattice members.
    pub fn edge_lines(self) -> [DyadicLine; 2] {
        // |2n| <= 60 < MAX_LINE_GEN, and the indices are the row numbers.
        let lower = DyadicLine::new(2 * self.n, self.l).expect("2n within line range");
        [lower, lower.up()]
    }

    /// The eight generation-(n+1) rectangles partitioning this one: the
    /// y-side halves while the t-side quarters.
    pub fn children(self) -> Result<[ParaRect; 8], GridError> {
        if self.n + 1 > MAX_GEN {
            return Err(GridError::GenerationOutOfRange((self.n + 1) as i64));
        }
        let mut out = [ParaRect { n: self.n + 1, k: 0, l: 0 }; 8];
        for i in 0..2 {
            for j in 0..4 {
                out[(i * 4 + j) as usize] = ParaRect {
                    n: self.n + 1,
                    k: 2 * self.k + i,
                    l: 4 * self.l + j,
                };
            }
        }
        Ok(out)
    }

    pub fn parent(self) -> Result<ParaRect, GridError> {
        if self.n - 1 < -MAX_GEN {
            return Err(GridError::GenerationOutOfRange((self.n - 1) as i64));
        }
        Ok(ParaRect {
            n: self.n - 1,
            k: self.k.div_euclid(2),
            l: self.l.div_euclid(4),
        })
    }

    /// The generation-m ancestor, m <= n.
    pub fn ancestor(self, m: i32) -> Result<ParaRect, GridError> {
        if m > self.n || m < -MAX_GEN {
            return Err(GridError::GenerationOutOfRange(m as i64));
        }
        let d = (self.n - m) as u32;
        Ok(ParaRect {
            n: m,
            k: self.k >> d,
            l: ((self.l as i128) >> (2 * d)) as i64,
        })
    }

    /// Exact dyadic nesting test.
    pub fn contains_rect(self, other: ParaRect) -> bool {
        other.n >= self.n && other.ancestor(self.n) == Ok(self)
    }

    /// Dyadic rectangles are disjoint unless nested.
    pub fn disjoint(self, other: ParaRect) -> bool {
        !self.contains_rect(other) && !other.contains_rect(self)
    }

    /// The generation-n rectangle containing a point. Points on interior
    /// dyadic boundaries land in the upper cell, matching `contains`.
    pub fn locate(w: ParaPoint, n: i32) -> Result<ParaRect, GridError> {
        if n.unsigned_abs() > MAX_GEN as u32 {
            return Err(GridError::GenerationOutOfRange(n as i64));
        }
        let s = (n as f64).exp2();
        Ok(ParaRect {
            n,
            k: (w.y * s).floor() as i64,
            l: (w.t * s * s).floor() as i64,
        })
    }

    /// The ball `B(center, lambda * len())`; a rectangle of dimensions
    /// `2 lambda len() x 2 (lambda len())^2`. Not the same set as the
    /// rectangle itself even at lambda = 1.
    pub fn lambda_ball(self, lambda: f64) -> Result<ParaBall, GridError> {
        if !(lambda > 0.0) {
            return Err(GridError::NonPositiveRadius(lambda));
        }
        Ok(ParaBall::new(self.center(), lambda * self.len()))
    }
}
