//! Planar analysis of vertically projected rug images.
//!
//! A rug image in the group, rotated into the chart of a chosen direction and
//! pushed through the plane projection, becomes a planar object. This crate
//! studies that object: winding numbers of projected boundary loops certify
//! membership in the image, the four-slab frame certifies that the image
//! covers a large rectangle, box counting turns the image into a measure, and
//! a direction sweep over those measures decides whether some projection of
//! the rug is big.

mod error;
mod frame;
mod loops;
mod raster;
mod slab;

pub use error::ProjError;
pub use loops::{winding_number, PlanarLoop};
pub use raster::{
    bvp_check, default_bvp_delta, projected_measure, raster_report, RasterReport, BVP_RESOLUTION,
    C_PROJ,
};
pub use slab::{
    default_slab_height, enclosed_by_image, slab_frame, HorizontalSlab, PlaneBox, SlabFrame,
    VerticalSlab,
};
