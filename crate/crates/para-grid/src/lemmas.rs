//! Corner placement under coarsening. A rectangle whose generation is about
//! half the line generation has corners on the line lattice; coarsening the
//! rectangle by one step moves its horizontal edges in a way that depends
//! only on the residue of the corner line's index.

use crate::error::GridError;
use crate::line::DyadicLine;
use crate::rect::ParaRect;
use heis_core::ParaPoint;

/// Rectangle generation whose corners live on the generation-n line
/// lattice: the smallest m with 2m >= n.
pub fn corner_generation(n: i32) -> i32 {
    (n + 1).div_euclid(2)
}

/// Line indices (in generation-n units) guaranteed to carry a horizontal
/// edge of the parent of every corner-generation rectangle having a corner
/// on line j.
///
/// For even n the rectangle rows coincide with the line indices and the
/// parent spans four of them, so the residue j mod 4 decides: on-lattice
/// residue 0 keeps the line itself, the middle residue 2 yields both lines
/// two steps away, and odd residues yield the adjacent line on one side and
/// the line three steps away on the other. For odd n the rows live on the
/// doubled lattice and the parent spans two line steps, so even j keeps the
/// line and odd j yields both neighbours.
fn guaranteed_parent_edges(n: i32, j: i64) -> Vec<i64> {
    if n.rem_euclid(2) == 0 {
        match j.rem_euclid(4) {
            0 => vec![j],
            1 => vec![j - 1, j + 3],
            2 => vec![j - 2, j + 2],
            _ => vec![j - 3, j + 1],
        }
    } else if j.rem_euclid(2) == 0 {
        vec![j]
    } else {
        vec![j - 1, j + 1]
    }
}

/// Checks that `lines` are five consecutive generation-n lines whose second
/// and fourth members belong to the coarser generation-(n-1) lattice.
fn validate_window(lines: &[DyadicLine; 5]) -> Result<(i32, i64), GridError> {
    let n = lines[0].generation();
    let base = lines[0].index();
    for (i, l) in lines.iter().enumerate() {
        if l.generation() != n || l.index() != base + i as i64 {
            return Err(GridError::LinesNotConsecutive);
        }
    }
    if !lines[1].member_of(n - 1) || !lines[3].member_of(n - 1) {
        return Err(GridError::MidLinesNotCoarser);
    }
    Ok((n, base))
}

/// Given five consecutive generation-n lines (second and fourth on the
/// coarser lattice) and a corner w of a corner-generation rectangle lying on
/// one of them, returns the members of {second, fourth} that must carry a
/// corner of the rectangle's parent. The result is never empty.
pub fn parent_corner_lines(
    lines: &[DyadicLine; 5],
    w: ParaPoint,
) -> Result<Vec<DyadicLine>, GridError> {
    let (n, base) = validate_window(lines)?;
    let m = corner_generation(n);

    // w must be a lattice corner: y on the generation-m grid, t on one of
    // the five lines. Both coordinates are exact dyadics here.
    let ys = w.y * (m as f64).exp2();
    if !(ys.fract() == 0.0 && ys.abs() < 2f64.powi(52)) {
        return Err(GridError::CornerOffLattice);
    }
    let j = lines
        .iter()
        .position(|l| l.t() == w.t)
        .map(|i| base + i as i64)
        .ok_or(GridError::CornerNotOnLines)?;

    let edges = guaranteed_parent_edges(n, j);
    let picked: Vec<DyadicLine> = [lines[1], lines[3]]
        .into_iter()
        .filter(|l| edges.contains(&l.index()))
        .collect();
    debug_assert!(!picked.is_empty(), "window always captures a parent edge");
    Ok(picked)
}

/// A generation-n line containing a horizontal edge of Q, for Q of the
/// corner generation. Even n puts both edges on the lattice (the lower one
/// is returned); odd n puts exactly one edge there.
pub fn edge_line_of(q: ParaRect, n: i32) -> Result<DyadicLine, GridError> {
    let m = corner_generation(n);
    if q.generation() != m {
        return Err(GridError::GenerationMismatch { expected: m, got: q.generation() });
    }
    if n.rem_euclid(2) == 0 {
        // rows are indexed on the generation-n lattice directly
        DyadicLine::new(n, q.row())
    } else {
        // edges live on generation n+1; every second one is coarser
        let l = q.row();
        if l.rem_euclid(2) == 0 {
            DyadicLine::new(n, l.div_euclid(2))
        } else {
            DyadicLine::new(n, (l + 1).div_euclid(2))
        }
    }
}
