//! The parabolic plane: points `(y, t)` with the metric
//! `max(|dy|, sqrt|dt|)`, and its closed balls (axis-aligned rectangles).

use crate::point::HPoint;

/// A point of the parabolic plane.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ParaPoint {
    pub y: f64,
    pub t: f64,
}

impl ParaPoint {
    pub fn new(y: f64, t: f64) -> Self {
        ParaPoint { y, t }
    }

    /// Parabolic distance `max(|dy|, sqrt|dt|)`.
    pub fn dist(self, w: ParaPoint) -> f64 {
        (self.y - w.y).abs().max((self.t - w.t).abs().sqrt())
    }

    /// First coordinate projection.
    pub fn pi1(self) -> f64 {
        self.y
    }

    /// Second coordinate projection.
    pub fn pi2(self) -> f64 {
        self.t
    }

    /// Embedding into the Heisenberg group as `(0, y, t)`.
    pub fn embed(self) -> HPoint {
        HPoint { x: 0.0, y: self.y, t: self.t }
    }
}

/// Parabolic distance, free-function form.
pub fn para_dist(v: ParaPoint, w: ParaPoint) -> f64 {
    v.dist(w)
}

/// A closed parabolic ball `B(center, radius)`. As a set it is the rectangle
/// `[y - r, y + r] x [t - r^2, t + r^2]`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ParaBall {
    pub center: ParaPoint,
    pub radius: f64,
}

impl ParaBall {
    pub fn new(center: ParaPoint, radius: f64) -> Self {
        ParaBall { center, radius }
    }

    pub fn contains(&self, w: ParaPoint) -> bool {
        self.center.dist(w) <= self.radius
    }

    /// The y-extent `[y - r, y + r]`.
    pub fn y_interval(&self) -> (f64, f64) {
        (self.center.y - self.radius, self.center.y + self.radius)
    }

    /// The t-extent `[t - r^2, t + r^2]`.
    pub fn t_interval(&self) -> (f64, f64) {
        let r2 = self.radius * self.radius;
        (self.center.t - r2, self.center.t + r2)
    }

    /// Concentric ball with radius scaled by `lambda`.
    pub fn scaled(&self, lambda: f64) -> ParaBall {
        ParaBall { center: self.center, radius: lambda * self.radius }
    }
}
