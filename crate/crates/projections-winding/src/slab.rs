//! The enclosure machinery: project a rug's boundary loop over a widened
//! window, certify interior points by winding number, and build the four-slab
//! frame whose inner rectangle the projected image must cover.

use crate::error::ProjError;
use crate::frame::{restore_shadow, Chart};
use crate::loops::{winding_number, PlanarLoop};
use flatness::{fit_horizontal_line, RugMap};
use heis_core::point::vproj;
use heis_core::{HPoint, ParaPoint, SNAP_FACTOR};
use para_grid::ParaRect;

/// Points sampled along each window edge when fitting and projecting.
const EDGE_SAMPLES: usize = 257;

/// An axis-parallel rectangle of the parameter plane, closed on all sides.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PlaneBox {
    pub y_lo: f64,
    pub y_hi: f64,
    pub t_lo: f64,
    pub t_hi: f64,
}

impl PlaneBox {
    pub fn new(y_lo: f64, y_hi: f64, t_lo: f64, t_hi: f64) -> Result<Self, ProjError> {
        if ![y_lo, y_hi, t_lo, t_hi].iter().all(|v| v.is_finite()) {
            return Err(ProjError::BadBox("coordinates must be finite"));
        }
        if y_lo >= y_hi || t_lo >= t_hi {
            return Err(ProjError::BadBox("intervals must have positive length"));
        }
        Ok(PlaneBox { y_lo, y_hi, t_lo, t_hi })
    }

    /// The window `[y0, y0 + h*len] x [t0, t0 + len^2]` sharing `q`'s corner:
    /// `q` stretched to `h` times its side length in the first coordinate.
    pub fn widened(q: ParaRect, h: f64) -> Result<Self, ProjError> {
        if !(h.is_finite() && h > 0.0) {
            return Err(ProjError::BadBox("widening factor must be positive and finite"));
        }
        let (y0, _) = q.y_interval();
        let (t0, t1) = q.t_interval();
        PlaneBox::new(y0, y0 + h * q.len(), t0, t1)
    }

    pub fn corner(&self) -> ParaPoint {
        ParaPoint::new(self.y_lo, self.t_lo)
    }

    pub fn center(&self) -> ParaPoint {
        ParaPoint::new(0.5 * (self.y_lo + self.y_hi), 0.5 * (self.t_lo + self.t_hi))
    }

    pub fn contains(&self, z: ParaPoint) -> bool {
        self.y_lo <= z.y && z.y <= self.y_hi && self.t_lo <= z.t && z.t <= self.t_hi
    }
}

/// A slab `{ |t - center| <= half_width }` of the projected plane.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct HorizontalSlab {
    pub center: f64,
    pub half_width: f64,
}

/// A slab `{ |y - center| <= half_width }` of the projected plane.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct VerticalSlab {
    pub center: f64,
    pub half_width: f64,
}

/// The four slabs trapping the projected boundary of a flat window, plus the
/// open rectangle they bound. The projected boundary loop crosses each slab
/// once, so every point of `r` is wound around and hence covered.
///
/// Coordinates are those of the anchored chart: window corner at the origin,
/// direction `theta` rotated away, lengths divided by `scale`. [`restore`]
/// maps a chart point back to the rotation-only chart; the translation part
/// acts on shadows as a shear, so the slabs themselves only stay axis
/// parallel in chart coordinates.
///
/// [`restore`]: SlabFrame::restore
#[derive(Debug, Clone)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SlabFrame {
    /// Horizontal slab around the projected lower edge.
    pub s1: HorizontalSlab,
    /// Vertical slab around the far corner's second coordinate.
    pub s2: VerticalSlab,
    /// Horizontal slab around the projected upper edge.
    pub s3: HorizontalSlab,
    /// Vertical slab through the anchored corner.
    pub s4: VerticalSlab,
    /// Inner open rectangle bounded by the four slabs.
    pub r: PlaneBox,
    /// Image of the window corner in the rotation-only chart.
    pub base: HPoint,
    /// Side length of the window the chart was normalized by.
    pub scale: f64,
    /// Projection direction the frame was built for.
    pub theta: f64,
    /// Worst edge-fit residual, in chart units.
    pub edge_residual: f64,
}

impl SlabFrame {
    /// Sends a chart point (for example a probe inside `r`) back to the
    /// rotation-only chart that [`enclosed_by_image`] reads probes in.
    pub fn restore(&self, z: ParaPoint) -> ParaPoint {
        restore_shadow(self.base, self.scale, z)
    }
}

/// Default widening for the slab construction, `20 m^2` for a rug of
/// bilipschitz constant `m`. Wide enough that the vertical separation
/// dominates every slab width with room to spare.
pub fn default_slab_height(m: f64) -> f64 {
    20.0 * m * m
}

/// Largest normalized edge residual the slab construction accepts. Beyond
/// this the slabs, widened by the snap factor, could eat into the
/// separations the frame's guarantees rest on.
fn slab_budget(m: f64) -> f64 {
    1.0 / (8.0 * SNAP_FACTOR * m)
}

/// Samples the four edges of `bx` in order (lower, far, upper reversed, near
/// reversed) and projects them through the chart into a closed loop.
fn boundary_loop(chart: &Chart, bx: PlaneBox, samples_per_edge: usize) -> PlanarLoop {
    let walk = |a: ParaPoint, b: ParaPoint| {
        (0..samples_per_edge).map(move |i| {
            let s = i as f64 / samples_per_edge as f64;
            ParaPoint::new(a.y + s * (b.y - a.y), a.t + s * (b.t - a.t))
        })
    };
    let c00 = ParaPoint::new(bx.y_lo, bx.t_lo);
    let c10 = ParaPoint::new(bx.y_hi, bx.t_lo);
    let c11 = ParaPoint::new(bx.y_hi, bx.t_hi);
    let c01 = ParaPoint::new(bx.y_lo, bx.t_hi);
    let mut vertices: Vec<ParaPoint> = walk(c00, c10)
        .chain(walk(c10, c11))
        .chain(walk(c11, c01))
        .chain(walk(c01, c00))
        .map(|w| chart.shadow(w))
        .collect();
    vertices.push(vertices[0]);
    PlanarLoop::new(vertices).expect("boundary sampling yields a closed loop")
}

/// Certifies `z` as a point of the projected image of `f` over `bx` in
/// direction `theta`: the projected boundary loop winding around `z` a
/// nonzero number of times means `z` cannot be separated from the image.
///
/// `z` is read in the rotation-only chart, that is, as a point of the plane
/// the `theta`-projection maps onto.
pub fn enclosed_by_image(
    f: &RugMap,
    bx: PlaneBox,
    theta: f64,
    z: ParaPoint,
    boundary_samples: usize,
) -> Result<bool, ProjError> {
    if boundary_samples < 64 {
        return Err(ProjError::BudgetTooSmall("need at least 64 samples per boundary edge"));
    }
    let chart = Chart::plain(f, theta);
    let lp = boundary_loop(&chart, bx, boundary_samples);
    Ok(winding_number(&lp, z)? != 0)
}

/// Builds the four-slab frame for `f` over the window sharing `q`'s corner,
/// widened by `h` in the first coordinate, in direction `theta`.
///
/// Works in the anchored chart: corner image at the origin, rotated by
/// `-theta`, lengths divided by the side of `q`. The horizontal slabs trap
/// the two projected edge curves; their centers come from fitted horizontal
/// lines and their widths cover every sample plus a snap-factor margin. The
/// vertical slabs of half-width `m` sit on the second coordinates of the two
/// lower corners' images.
///
/// Fails with a not-flat-enough error when the edge fits exceed the residual
/// budget or any of the slab separations drops below its floor: the frame's
/// covering guarantee is void in either case.
pub fn slab_frame(f: &RugMap, q: ParaRect, theta: f64, h: f64) -> Result<SlabFrame, ProjError> {
    let bx = PlaneBox::widened(q, h)?;
    let m = f.m();
    let ell = q.len();
    let chart = Chart::anchored(f, theta, bx.corner(), ell);

    let edge = |t: f64| -> Vec<HPoint> {
        (0..EDGE_SAMPLES)
            .map(|i| {
                let s = i as f64 / (EDGE_SAMPLES - 1) as f64;
                chart.image(ParaPoint::new(bx.y_lo + s * (bx.y_hi - bx.y_lo), t))
            })
            .collect()
    };
    let lower = edge(bx.t_lo);
    let upper = edge(bx.t_hi);

    let fit_lo = fit_horizontal_line(&lower).expect("edge cloud is large enough");
    let fit_hi = fit_horizontal_line(&upper).expect("edge cloud is large enough");
    let residual = fit_lo.sup_err.max(fit_hi.sup_err);
    if residual > slab_budget(m) {
        return Err(ProjError::NotFlatEnough("edge residual exceeds the slab budget"));
    }

    // every projected edge sample must land inside its slab
    let trap = |cloud: &[HPoint]| -> HorizontalSlab {
        let heights = cloud.iter().map(|&p| vproj(p).t);
        let (lo, hi) = heights.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), t| {
            (lo.min(t), hi.max(t))
        });
        let widen = (SNAP_FACTOR * residual).powi(2);
        HorizontalSlab { center: 0.5 * (lo + hi), half_width: (0.5 * (hi - lo)).max(widen) }
    };
    let s1 = trap(&lower);
    let s3 = trap(&upper);

    let near = chart.shadow(bx.corner()).y;
    let far = chart.shadow(ParaPoint::new(bx.y_hi, bx.t_lo)).y;
    if (far - near).abs() < h / (2.0 * m) {
        return Err(ProjError::NotFlatEnough(
            "second coordinate spreads too little along the lower edge",
        ));
    }
    let s2 = VerticalSlab { center: far, half_width: m };
    let s4 = VerticalSlab { center: near, half_width: m };

    let t_gap = (s3.center - s1.center).abs() - s1.half_width - s3.half_width;
    if t_gap < 1.0 / (4.0 * m) {
        return Err(ProjError::NotFlatEnough("horizontal slabs are not separated"));
    }
    let y_gap = (s2.center - s4.center).abs() - s2.half_width - s4.half_width;
    if y_gap < h / (4.0 * m) {
        return Err(ProjError::NotFlatEnough("vertical slabs are not separated"));
    }
    // implied by the separations, which were checked just above
    assert!(y_gap * t_gap >= h / (16.0 * m * m));

    let (t_lo_slab, t_hi_slab) = if s1.center <= s3.center { (s1, s3) } else { (s3, s1) };
    let r = PlaneBox::new(
        s2.center.min(s4.center) + m,
        s2.center.max(s4.center) - m,
        t_lo_slab.center + t_lo_slab.half_width,
        t_hi_slab.center - t_hi_slab.half_width,
    )?;

    Ok(SlabFrame {
        s1,
        s2,
        s3,
        s4,
        r,
        base: chart.base(),
        scale: ell,
        theta,
        edge_residual: residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_window_encloses_its_center() {
        let f = RugMap::identity();
        let bx = PlaneBox::widened(ParaRect::unit(), 20.0).unwrap();
        let inside = enclosed_by_image(&f, bx, 0.0, ParaPoint::new(10.0, 0.5), 64).unwrap();
        assert!(inside);
        let outside = enclosed_by_image(&f, bx, 0.0, ParaPoint::new(100.0, 50.0), 64).unwrap();
        assert!(!outside);
    }

    #[test]
    fn tiny_boundary_budget_is_rejected() {
        let f = RugMap::identity();
        let bx = PlaneBox::widened(ParaRect::unit(), 20.0).unwrap();
        assert_eq!(
            enclosed_by_image(&f, bx, 0.0, ParaPoint::new(10.0, 0.5), 63),
            Err(ProjError::BudgetTooSmall("need at least 64 samples per boundary edge"))
        );
    }

    #[test]
    fn identity_frame_has_a_large_inner_rectangle() {
        let f = RugMap::identity();
        let h = default_slab_height(f.m());
        assert_eq!(h, 20.0);
        let frame = slab_frame(&f, ParaRect::unit(), 0.0, h).unwrap();
        // lower edge projects onto t = 0, upper onto t = 1, in chart units
        assert!(frame.edge_residual < 1e-9);
        assert!(frame.s1.center.abs() < 1e-9);
        assert!((frame.s3.center - 1.0).abs() < 1e-9);
        assert!((frame.s2.center - 20.0).abs() < 1e-9);
        assert!(frame.s4.center.abs() < 1e-9);
        let area = (frame.r.y_hi - frame.r.y_lo) * (frame.r.t_hi - frame.r.t_lo);
        assert!(area >= h / 16.0);
    }

    #[test]
    fn wiggly_rug_is_rejected_on_residual() {
        let f = RugMap::sine_perturbed(0.5, 3.0);
        let err = slab_frame(&f, ParaRect::unit(), 0.0, default_slab_height(f.m())).unwrap_err();
        assert!(matches!(err, ProjError::NotFlatEnough(_)));
    }

    #[test]
    fn tilted_plane_is_rejected_when_not_rotated_away() {
        // edges lie exactly on horizontal lines, so the residual gate passes,
        // but their projections are parabolas too wide for the slabs
        let f = RugMap::plane(0.5, 0.0, 0.0);
        let err = slab_frame(&f, ParaRect::unit(), 0.0, default_slab_height(f.m())).unwrap_err();
        assert_eq!(err, ProjError::NotFlatEnough("horizontal slabs are not separated"));
    }

    #[test]
    fn degenerate_boxes_are_rejected() {
        assert!(PlaneBox::new(0.0, 0.0, 0.0, 1.0).is_err());
        assert!(PlaneBox::new(0.0, 1.0, 1.0, 1.0).is_err());
        assert!(PlaneBox::new(0.0, f64::INFINITY, 0.0, 1.0).is_err());
        assert!(PlaneBox::widened(ParaRect::unit(), -1.0).is_err());
    }
}
