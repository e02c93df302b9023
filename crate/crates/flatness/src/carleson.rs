//! Packing audit over the dyadic tree: total cubed side length of the
//! descendants whose enlarged-ball coefficient reaches a threshold, and its
//! ratio to the root's cubed side.

use rayon::prelude::*;

use heis_core::ParaBall;
use para_grid::{ParaRect, MAX_GEN};

use crate::coeffs::{equispaced, line_image, strong_vertical_beta_with};
use crate::error::FlatError;
use crate::fit::{fit_horizontal_line_with, fit_surrogate, seed_line, surrogate_at};
use crate::rug::RugMap;
use crate::Tunables;

/// Which coefficient gates a rectangle into the packing sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum CoeffKind {
    /// Per-line ruler coefficient of the enlarged ball.
    Ruler,
    /// Strong vertical beta of the enlarged ball.
    Beta,
}

/// Walk depth past which the sweep refuses to run: the rectangle count
/// grows eightfold per level.
pub const MAX_DEPTH: u32 = 10;

/// Sums `len(Q)^3` over descendants `Q` of `q0` down to `depth` extra
/// generations whose coefficient on the `c`-enlarged ball reaches
/// `threshold`. Returns the sum and its ratio to `len(q0)^3`.
pub fn carleson_sum(
    f: &RugMap,
    q0: ParaRect,
    depth: u32,
    kind: CoeffKind,
    threshold: f64,
    c: f64,
) -> Result<(f64, f64), FlatError> {
    carleson_sum_with(f, q0, depth, kind, threshold, c, &Tunables::default())
}

pub fn carleson_sum_with(
    f: &RugMap,
    q0: ParaRect,
    depth: u32,
    kind: CoeffKind,
    threshold: f64,
    c: f64,
    tun: &Tunables,
) -> Result<(f64, f64), FlatError> {
    if depth > MAX_DEPTH {
        return Err(FlatError::DepthTooDeep(depth));
    }
    if q0.generation() + depth as i32 > MAX_GEN {
        return Err(FlatError::DepthTooDeep(depth));
    }
    if !(c > 0.0) {
        return Err(FlatError::BadEnlargement(c));
    }
    if tun.sweep_lines < 3 {
        return Err(FlatError::BudgetTooSmall("need at least 3 lines per sweep"));
    }
    if tun.sweep_samples < 8 {
        return Err(FlatError::BudgetTooSmall("need at least 8 points per line"));
    }
    let sweep = Sweep { f, kind, threshold, c, tun };
    let sum = subtree_sum(&sweep, q0, depth);
    Ok((sum, sum / q0.len().powi(3)))
}

struct Sweep<'a> {
    f: &'a RugMap,
    kind: CoeffKind,
    threshold: f64,
    c: f64,
    tun: &'a Tunables,
}

fn subtree_sum(sweep: &Sweep<'_>, q: ParaRect, remaining: u32) -> f64 {
    let ball = q.lambda_ball(sweep.c).expect("enlargement validated at entry");
    let counted = match sweep.kind {
        CoeffKind::Ruler => ruler_reaches(sweep.f, ball, sweep.threshold, sweep.tun),
        CoeffKind::Beta => {
            let fit = strong_vertical_beta_with(
                sweep.f,
                ball,
                sweep.tun.sweep_lines as usize,
                sweep.tun.sweep_samples as usize,
                sweep.tun,
            )
            .expect("sweep budget validated at entry");
            fit.beta >= sweep.threshold
        }
    };
    let own = if counted { q.len().powi(3) } else { 0.0 };
    if remaining == 0 {
        return own;
    }
    let children = q.children().expect("generation bound validated at entry");
    // fan out, then reduce in fixed child order so the float sum is
    // reproducible regardless of scheduling
    let child_sums: Vec<f64> = children
        .par_iter()
        .map(|&ch| subtree_sum(sweep, ch, remaining - 1))
        .collect();
    own + child_sums.into_iter().sum::<f64>()
}

/// Decides `ruler_coeff(ball) >= threshold` exactly, but pays the full
/// solver cost only on lines that cheaper certificates cannot rule out.
/// Sound because the snap surrogate dominates the true distance and the
/// final polish never worsens its seed.
fn ruler_reaches(f: &RugMap, ball: ParaBall, threshold: f64, tun: &Tunables) -> bool {
    let bar = threshold * ball.radius;
    let (t_lo, t_hi) = ball.t_interval();
    for t in equispaced(t_lo, t_hi, tun.sweep_lines as usize) {
        let points = line_image(f, ball, t, tun.sweep_samples as usize);
        // the seed line alone is already a witness; deep in a tree almost
        // every rectangle is ruled out right here
        let seed = seed_line(&points);
        if surrogate_at(&seed, &points) < bar {
            continue;
        }
        let (line, surrogate) = fit_surrogate(&points, tun).expect("budget validated");
        if surrogate < bar {
            continue;
        }
        let seed_sup = points
            .iter()
            .map(|&p| line.dist_to(p))
            .fold(0.0, f64::max);
        if seed_sup < bar {
            continue;
        }
        let fit = fit_horizontal_line_with(&points, tun).expect("budget validated");
        if fit.sup_err >= bar {
            return true;
        }
    }
    false
}
