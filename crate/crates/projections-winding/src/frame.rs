//! Chart plumbing shared by the enclosure and slab constructions: rotate the
//! ambient image, optionally anchor a corner at the group origin and rescale,
//! then read everything through the plane projection.

use flatness::RugMap;
use heis_core::point::{rotate, vproj};
use heis_core::{HPoint, ParaPoint};

/// A rug image viewed in the chart of one projection direction. The image is
/// rotated by `-theta` so the direction of interest becomes the base plane,
/// then left-translated so `base` lands at the origin, then dilated by
/// `1/scale`.
pub(crate) struct Chart<'a> {
    f: &'a RugMap,
    theta: f64,
    base_inv: HPoint,
    inv_scale: f64,
}

impl<'a> Chart<'a> {
    /// Rotation only; no anchoring, no rescaling.
    pub fn plain(f: &'a RugMap, theta: f64) -> Self {
        Chart { f, theta, base_inv: HPoint::ORIGIN, inv_scale: 1.0 }
    }

    /// Full normalization: the image of `anchor` goes to the origin and
    /// lengths shrink by `scale`.
    pub fn anchored(f: &'a RugMap, theta: f64, anchor: ParaPoint, scale: f64) -> Self {
        let base = rotate(-theta, f.eval(anchor));
        Chart { f, theta, base_inv: base.inv(), inv_scale: 1.0 / scale }
    }

    /// The anchor's image in the rotation-only chart.
    pub fn base(&self) -> HPoint {
        self.base_inv.inv()
    }

    pub fn image(&self, w: ParaPoint) -> HPoint {
        let p = self.base_inv.mul(rotate(-self.theta, self.f.eval(w)));
        let r = self.inv_scale;
        HPoint::new(r * p.x, r * p.y, r * r * p.t)
    }

    pub fn shadow(&self, w: ParaPoint) -> ParaPoint {
        vproj(self.image(w))
    }
}

/// Sends a point of the anchored chart's projected plane back to the
/// rotation-only chart. Left translation acts on shadows as a shear, which is
/// why the anchored frame cannot simply be translated back slab by slab.
pub(crate) fn restore_shadow(base: HPoint, scale: f64, z: ParaPoint) -> ParaPoint {
    // lift flat: the lift (0, y, t) has shadow exactly (y, t)
    let lifted = HPoint::new(0.0, scale * z.y, scale * scale * z.t);
    vproj(base.mul(lifted))
}
