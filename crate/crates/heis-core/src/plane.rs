//! Vertical planes: graphs `{(a y + b, y, t)}` over the yt-plane, closed
//! under translation in t.

use crate::para::ParaPoint;
use crate::point::HPoint;

/// The vertical plane `{(a y + b, y, t) : y, t in R}`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct VerticalPlane {
    pub a: f64,
    pub b: f64,
}

impl VerticalPlane {
    pub fn new(a: f64, b: f64) -> Self {
        VerticalPlane { a, b }
    }

    /// The yt-plane itself.
    pub const YT: VerticalPlane = VerticalPlane { a: 0.0, b: 0.0 };

    /// Slope relative to the yt-plane.
    pub fn slope(&self) -> f64 {
        self.a.abs()
    }

    /// Slope relative to the plane obtained by rotating the yt-plane by
    /// `theta`: the slope of this plane rotated back by `-theta`. Infinite
    /// when the rotated plane is parallel to the xt-plane.
    pub fn slope_against(&self, theta: f64) -> f64 {
        let (s, c) = theta.sin_cos();
        // Direction (a, 1) rotated by -theta: (a c + s, c - a s).
        let num = self.a * c + s;
        let den = c - self.a * s;
        if den == 0.0 {
            f64::INFINITY
        } else {
            (num / den).abs()
        }
    }

    /// Horizontal gap between `p` and the plane: `|x - (a y + b)|`. Zero
    /// exactly on the plane; a cheap membership measure for tests.
    pub fn x_gap(&self, p: HPoint) -> f64 {
        (p.x - (self.a * p.y + self.b)).abs()
    }

    pub fn contains(&self, p: HPoint, tol: f64) -> bool {
        self.x_gap(p) <= tol
    }

    /// Parabolic coordinates on the plane: `(y, t + xy/2 - ay^2/2 - by)`.
    /// Composing with `param` gives `(y, t + c)` for the height-c copy, so
    /// the chart flattens each in-plane horizontal line onto a horizontal
    /// line of the parabolic plane.
    pub fn chart(&self, p: HPoint) -> ParaPoint {
        ParaPoint::new(
            p.y,
            p.t + 0.5 * p.x * p.y - 0.5 * self.a * p.y * p.y - self.b * p.y,
        )
    }

    /// Points of the plane in graph form: `(a y + b, y, b y / 2 + t)`.
    /// Restricted to fixed t this is a horizontal line with c = t.
    pub fn param(&self, w: ParaPoint) -> HPoint {
        HPoint::new(
            self.a * w.y + self.b,
            w.y,
            0.5 * self.b * w.y + w.t,
        )
    }
}
