//! Quantitative flatness of rug maps: minimax horizontal-line fitting,
//! ruler coefficients, horizontal and strong vertical beta numbers, the
//! L4-averaged alpha coefficient, and Carleson packing audits.
//!
//! All coefficients are computed on finite samples. A reported value is the
//! exact minimax over the sampled points for the exhibited witness line or
//! plane, which makes it an upper estimate of the true infimum over lines
//! and a lower estimate of the sup over the continuum. Solver budgets live
//! in [`Tunables`] and are fixed for reproducibility.

pub mod carleson;
pub mod coeffs;
pub mod error;
pub mod fit;
pub mod rug;

pub use carleson::{carleson_sum, carleson_sum_with, CoeffKind, MAX_DEPTH};
pub use coeffs::{
    alpha_coeff, alpha_coeff_with, horizontal_beta, horizontal_beta_with, ruler_coeff,
    ruler_coeff_with, strong_vertical_beta, strong_vertical_beta_with, PlaneFit,
    PromotionConstants,
};
pub use error::FlatError;
pub use fit::{fit_horizontal_line, fit_horizontal_line_with, fit_in_plane, LineFit};
pub use rug::{bilipschitz_defect, RugMap};

/// Fixed solver budgets and sampling constants. One record, serialized into
/// reports, so every figure in a report is reproducible from the config.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Tunables {
    /// Simplex iterations per restart for the minimax polish.
    pub nm_iters: u32,
    /// Polish restarts (each from the incumbent with a shrunken simplex).
    pub nm_restarts: u32,
    /// Budget for the final polish that scores the true point-line
    /// distance. Each objective call pays a distance scan per point, so
    /// this stage is priced separately from the snap-surrogate descent.
    pub true_polish_iters: u32,
    pub true_polish_restarts: u32,
    /// Candidate count for the closed height-coefficient scan.
    pub c_scan: u32,
    /// Grid steps per half-axis for the plane search.
    pub plane_grid: u32,
    /// Largest plane slope the coarse search considers.
    pub sigma_max: f64,
    /// Points per line in the averaged-coefficient quadrature. One more
    /// than a power of two, so dyadic intervals sample at exact floats.
    pub alpha_y_samples: u32,
    /// Lines and points per line for coefficient sweeps inside the packing
    /// walk, where each rectangle gets its own fit. Defaults are the
    /// smallest admissible budget, since the walk visits up to
    /// `8^(depth+1)/7` rectangles.
    pub sweep_lines: u32,
    pub sweep_samples: u32,
}

impl Default for Tunables {
    fn default() -> Self {
        Tunables {
            nm_iters: 200,
            nm_restarts: 3,
            true_polish_iters: 80,
            true_polish_restarts: 2,
            c_scan: 257,
            plane_grid: 64,
            sigma_max: 4.0,
            alpha_y_samples: 33,
            sweep_lines: 3,
            sweep_samples: 8,
        }
    }
}
