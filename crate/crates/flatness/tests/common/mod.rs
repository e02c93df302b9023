//! Shared grid-minimax oracle for integration tests: nested grids over
//! (slope, offset, height), scoring the true point-line distance.

use heis_core::{HPoint, HorizontalLine};

pub fn true_max(a: f64, b: f64, c: f64, points: &[HPoint]) -> f64 {
    let l = HorizontalLine::new(a, b, c);
    points
        .iter()
        .map(|&p| l.dist_to(p))
        .fold(0.0, f64::max)
}

/// Minimax over a centered (a, b, c) grid.
pub fn grid_stage(
    points: &[HPoint],
    center: (f64, f64, f64),
    half: f64,
    step: f64,
) -> (f64, (f64, f64, f64)) {
    let n = (half / step).round() as i64;
    let mut best = (f64::INFINITY, center);
    for i in -n..=n {
        let a = center.0 + step * i as f64;
        for j in -n..=n {
            let b = center.1 + step * j as f64;
            for k in -n..=n {
                let c = center.2 + step * k as f64;
                let v = true_max(a, b, c, points);
                if v < best.0 {
                    best = (v, (a, b, c));
                }
            }
        }
    }
    best
}

/// Coarse sweep over the full box with the height picked as the midrange of
/// the graph heights, then nested refinement down to step 1e-3.
pub fn grid_minimax(points: &[HPoint]) -> f64 {
    let mut best = (f64::INFINITY, (0.0, 0.0, 0.0));
    let coarse = 0.05;
    let n = (2.0 / coarse) as i64;
    for i in -n..=n {
        let a = coarse * i as f64;
        for j in -n..=n {
            let b = coarse * j as f64;
            let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
            for p in points {
                let h = p.t + 0.5 * p.x * p.y - 0.5 * a * p.y * p.y - b * p.y;
                lo = lo.min(h);
                hi = hi.max(h);
            }
            let c = 0.5 * (lo + hi);
            let v = true_max(a, b, c, points);
            if v < best.0 {
                best = (v, (a, b, c));
            }
        }
    }
    // nested local grids; each stage is wide enough to cover the previous
    // resolution
    for (half, step) in [(0.06, 0.01), (0.015, 2.5e-3), (3.0e-3, 1e-3)] {
        best = grid_stage(points, best.1, half, step);
    }
    best.0
}

/// Deeper refinement for oracles of flatter configurations: near a flat
/// optimum the height enters the distance under a square root of a small
/// residual, so the 1e-3 grid above smears the value; keep refining until
/// the height is placed to 1e-6.
#[allow(dead_code)]
pub fn grid_minimax_deep(points: &[HPoint]) -> f64 {
    let mut best = (f64::INFINITY, (0.0, 0.0, 0.0));
    let coarse = 0.05;
    let n = (2.0 / coarse) as i64;
    for i in -n..=n {
        let a = coarse * i as f64;
        for j in -n..=n {
            let b = coarse * j as f64;
            let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
            for p in points {
                let h = p.t + 0.5 * p.x * p.y - 0.5 * a * p.y * p.y - b * p.y;
                lo = lo.min(h);
                hi = hi.max(h);
            }
            let c = 0.5 * (lo + hi);
            let v = true_max(a, b, c, points);
            if v < best.0 {
                best = (v, (a, b, c));
            }
        }
    }
    for (half, step) in [
        (0.06, 0.01),
        (0.015, 2.5e-3),
        (3.0e-3, 5e-4),
        (1.0e-3, 1e-4),
        (2.0e-4, 2e-5),
        (4.0e-5, 4e-6),
        (8.0e-6, 1e-6),
    ] {
        best = grid_stage(points, best.1, half, step);
    }
    best.0
}
