//! Points of the Heisenberg group: group law, homogeneous norm and distance,
//! dilations, rotations about the t-axis, and the splitting projections.

use crate::error::CoreError;
use crate::para::ParaPoint;

/// A point `(x, y, t)` of the Heisenberg group. `x` and `y` are length-1
/// coordinates, `t` is a length-2 coordinate.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct HPoint {
    pub x: f64,
    pub y: f64,
    pub t: f64,
}

impl HPoint {
    pub const ORIGIN: HPoint = HPoint { x: 0.0, y: 0.0, t: 0.0 };

    pub fn new(x: f64, y: f64, t: f64) -> Self {
        HPoint { x, y, t }
    }

    /// Group product. The t-component picks up the signed area term
    /// `(x1*y2 - x2*y1)/2`, which is what makes left translations isometries.
    pub fn mul(self, q: HPoint) -> HPoint {
        HPoint {
            x: self.x + q.x,
            y: self.y + q.y,
            t: self.t + q.t + 0.5 * (self.x * q.y - q.x * self.y),
        }
    }

    /// Group inverse; coordinate negation.
    pub fn inv(self) -> HPoint {
        HPoint { x: -self.x, y: -self.y, t: -self.t }
    }

    /// Homogeneous norm `max(hypot(x, y), sqrt|t|)`.
    pub fn norm(self) -> f64 {
        self.x.hypot(self.y).max(self.t.abs().sqrt())
    }

    /// Left-invariant distance `norm(q^-1 * p)`.
    pub fn dist(self, q: HPoint) -> f64 {
        q.inv().mul(self).norm()
    }

    /// Euclidean shadow `(x, y)`; 1-Lipschitz for the group distance.
    pub fn shadow(self) -> (f64, f64) {
        (self.x, self.y)
    }
}

/// Group product, free-function form.
pub fn group_mul(p: HPoint, q: HPoint) -> HPoint {
    p.mul(q)
}

/// Group inverse, free-function form.
pub fn group_inv(p: HPoint) -> HPoint {
    p.inv()
}

/// Left-invariant distance between two points.
pub fn hdist(p: HPoint, q: HPoint) -> f64 {
    p.dist(q)
}

/// Homogeneous dilation `(rx, ry, r^2 t)`; scales distances by exactly `r`.
pub fn dilate(r: f64, p: HPoint) -> Result<HPoint, CoreError> {
    if !(r > 0.0) {
        return Err(CoreError::NonPositiveDilation(r));
    }
    Ok(HPoint { x: r * p.x, y: r * p.y, t: r * r * p.t })
}

/// Rotation by `theta` about the t-axis. A group automorphism and an isometry.
pub fn rotate(theta: f64, p: HPoint) -> HPoint {
    let (s, c) = theta.sin_cos();
    HPoint {
        x: c * p.x - s * p.y,
        y: s * p.x + c * p.y,
        t: p.t,
    }
}

/// Projection onto the yt-plane along the group splitting:
/// `(x, y, t) -> (y, t + xy/2)`.
pub fn vproj(p: HPoint) -> ParaPoint {
    ParaPoint { y: p.y, t: p.t + 0.5 * p.x * p.y }
}

/// Projection onto the plane obtained by rotating the yt-plane by `theta`,
/// computed by conjugating `vproj` with the rotation.
pub fn vproj_theta(theta: f64, p: HPoint) -> HPoint {
    let w = vproj(rotate(-theta, p));
    rotate(theta, w.embed())
}

/// Horizontal projection onto the x-axis: returns the x-coordinate of the
/// group splitting `p = w * (x, 0, 0)`.
pub fn hproj(p: HPoint) -> f64 {
    p.x
}
