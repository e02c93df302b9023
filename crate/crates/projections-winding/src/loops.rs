//! Closed polygonal loops in the projected plane and their winding numbers.
//! Coordinates are read as a flat plane here: winding is a topological count
//! and does not care about the parabolic metric.

use crate::error::ProjError;
use heis_core::ParaPoint;

/// A closed polygonal loop: an ordered vertex list whose last vertex repeats
/// the first. Edges join consecutive vertices.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PlanarLoop {
    vertices: Vec<ParaPoint>,
}

impl PlanarLoop {
    pub fn new(vertices: Vec<ParaPoint>) -> Result<Self, ProjError> {
        if vertices.len() < 4 {
            return Err(ProjError::TooFewVertices(vertices.len()));
        }
        if vertices.iter().any(|v| !v.y.is_finite() || !v.t.is_finite()) {
            return Err(ProjError::NonFiniteVertex);
        }
        let first = vertices[0];
        let last = vertices[vertices.len() - 1];
        if first.y != last.y || first.t != last.t {
            return Err(ProjError::NotClosed);
        }
        Ok(PlanarLoop { vertices })
    }

    pub fn vertices(&self) -> &[ParaPoint] {
        &self.vertices
    }

    fn edges(&self) -> impl Iterator<Item = (ParaPoint, ParaPoint)> + '_ {
        self.vertices.windows(2).map(|e| (e[0], e[1]))
    }

    /// Euclidean distance from `z` to the loop (minimum over edges).
    pub fn distance_to(&self, z: ParaPoint) -> f64 {
        self.edges()
            .map(|(u, v)| segment_distance(u, v, z))
            .fold(f64::INFINITY, f64::min)
    }

    fn coordinate_scale(&self, z: ParaPoint) -> f64 {
        self.vertices
            .iter()
            .flat_map(|v| [v.y.abs(), v.t.abs()])
            .fold(z.y.abs().max(z.t.abs()), f64::max)
            .max(1.0)
    }
}

fn segment_distance(u: ParaPoint, v: ParaPoint, z: ParaPoint) -> f64 {
    let (ey, et) = (v.y - u.y, v.t - u.t);
    let (py, pt) = (z.y - u.y, z.t - u.t);
    let len2 = ey * ey + et * et;
    let s = if len2 > 0.0 {
        ((py * ey + pt * et) / len2).clamp(0.0, 1.0)
    } else {
        0.0
    };
    (py - s * ey).hypot(pt - s * et)
}

/// Twice the signed area of the triangle `a b p`; positive when `p` lies to
/// the left of the directed edge `a -> b`.
fn left_of(a: ParaPoint, b: ParaPoint, p: ParaPoint) -> f64 {
    (b.y - a.y) * (p.t - a.t) - (p.y - a.y) * (b.t - a.t)
}

/// Signed number of times the loop travels around `z`, by counting signed
/// crossings of the horizontal ray through `z`. Counterclockwise circuits
/// count positively.
///
/// Errors with `OnBoundary` when `z` sits within `1e-12` of an edge,
/// relative to the largest coordinate in play; the count is meaningless
/// there.
pub fn winding_number(lp: &PlanarLoop, z: ParaPoint) -> Result<i64, ProjError> {
    let tol = 1e-12 * lp.coordinate_scale(z);
    if lp.distance_to(z) <= tol {
        return Err(ProjError::OnBoundary);
    }
    let mut total = 0i64;
    for (u, v) in lp.edges() {
        if u.t <= z.t {
            if v.t > z.t && left_of(u, v, z) > 0.0 {
                total += 1;
            }
        } else if v.t <= z.t && left_of(u, v, z) < 0.0 {
            total -= 1;
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(y: f64, t: f64) -> ParaPoint {
        ParaPoint::new(y, t)
    }

    fn unit_square() -> PlanarLoop {
        PlanarLoop::new(vec![
            pt(-0.5, -0.5),
            pt(0.5, -0.5),
            pt(0.5, 0.5),
            pt(-0.5, 0.5),
            pt(-0.5, -0.5),
        ])
        .unwrap()
    }

    #[test]
    fn counterclockwise_square_winds_once_around_center() {
        assert_eq!(winding_number(&unit_square(), pt(0.0, 0.0)).unwrap(), 1);
    }

    #[test]
    fn far_point_is_not_enclosed() {
        assert_eq!(winding_number(&unit_square(), pt(5.0, 5.0)).unwrap(), 0);
    }

    #[test]
    fn clockwise_square_winds_negatively() {
        let mut vs: Vec<ParaPoint> = unit_square().vertices().to_vec();
        vs.reverse();
        let lp = PlanarLoop::new(vs).unwrap();
        assert_eq!(winding_number(&lp, pt(0.0, 0.0)).unwrap(), -1);
    }

    #[test]
    fn doubled_loop_winds_twice() {
        let square = unit_square();
        let once = &square.vertices()[..4];
        let mut vs = once.to_vec();
        vs.extend_from_slice(once);
        vs.push(once[0]);
        let lp = PlanarLoop::new(vs).unwrap();
        assert_eq!(winding_number(&lp, pt(0.0, 0.0)).unwrap(), 2);
    }

    #[test]
    fn probe_on_an_edge_is_rejected() {
        assert_eq!(
            winding_number(&unit_square(), pt(0.5, 0.0)),
            Err(ProjError::OnBoundary)
        );
        // a vertex counts as boundary too
        assert_eq!(
            winding_number(&unit_square(), pt(0.5, 0.5)),
            Err(ProjError::OnBoundary)
        );
    }

    #[test]
    fn malformed_loops_are_rejected() {
        assert_eq!(
            PlanarLoop::new(vec![pt(0.0, 0.0), pt(1.0, 0.0), pt(0.0, 0.0)]),
            Err(ProjError::TooFewVertices(3))
        );
        assert_eq!(
            PlanarLoop::new(vec![pt(0.0, 0.0), pt(1.0, 0.0), pt(1.0, 1.0), pt(0.0, 1.0)]),
            Err(ProjError::NotClosed)
        );
        assert_eq!(
            PlanarLoop::new(vec![
                pt(0.0, 0.0),
                pt(f64::NAN, 0.0),
                pt(1.0, 1.0),
                pt(0.0, 0.0)
            ]),
            Err(ProjError::NonFiniteVertex)
        );
    }

    #[test]
    fn distance_to_is_the_edge_minimum() {
        let lp = unit_square();
        assert!((lp.distance_to(pt(0.0, 0.0)) - 0.5).abs() < 1e-15);
        assert!((lp.distance_to(pt(1.5, 0.0)) - 1.0).abs() < 1e-15);
    }
}
