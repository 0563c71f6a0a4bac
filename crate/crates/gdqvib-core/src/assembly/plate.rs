//! Plate rows: biharmonic governing equations on interior nodes and the
//! boundary-condition rows of the four edges.
//!
//! Double boundary conditions follow the standard placement: the
//! moment-type condition is carried by the boundary node, the shear-type
//! condition by the node adjacent to it, both evaluated at the edge. Edge
//! ownership around the corners gives the x-edges the full second columns
//! `j = 1..m-2` while the y-edges own the second rows only for
//! `i = 2..n-3`; the four corner nodes carry the twist condition
//! `w_xy = 0` (or a zero-displacement row next to a clamped edge).

use crate::assembly::{EigenScale, Region, RowKind, SystemBuilder};
use crate::dq::{DiffMatrixSet, Grid1D};
use crate::error::{Error, Result};
use crate::model::{Material, PlateSection};

/// Evaluation node of the second (shear/slope) boundary row. Both edge
/// conditions collocate at the edge itself: the delta point exists to
/// carry the second row, not to move its collocation point (evaluating at
/// the delta point would add an O(delta) consistency error, making the
/// spectrum drift with delta).
fn second_row_eval(grid: &Grid1D, edge: usize) -> usize {
    let _ = grid;
    edge
}

/// Condition on one plate edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeCondition {
    Free,
    Clamped,
    /// Continuity rows are emitted by the coupled assembler for footprint
    /// nodes; nodes outside the footprint stay free.
    CoupledFootprint,
}

/// Edge conditions in grid order: west is x = 0, east x = a, south y = 0,
/// north y = b.
#[derive(Debug, Clone, Copy)]
pub struct PlateEdges {
    pub west: EdgeCondition,
    pub east: EdgeCondition,
    pub south: EdgeCondition,
    pub north: EdgeCondition,
}

impl PlateEdges {
    pub fn all_free() -> Self {
        Self {
            west: EdgeCondition::Free,
            east: EdgeCondition::Free,
            south: EdgeCondition::Free,
            north: EdgeCondition::Free,
        }
    }

    pub fn cantilever_west() -> Self {
        Self {
            west: EdgeCondition::Clamped,
            ..Self::all_free()
        }
    }

    pub fn coupled_west() -> Self {
        Self {
            west: EdgeCondition::CoupledFootprint,
            ..Self::all_free()
        }
    }
}

/// Eigenvalue factor: `a^4` for nondimensional assembly (eigenvalue
/// `omega_bar_p^2`), `D / (rho h)` for physical `omega^2`.
fn plate_scale(scale: EigenScale, material: &Material, plate: &PlateSection) -> f64 {
    match scale {
        EigenScale::Nondim => plate.a.powi(4),
        EigenScale::PhysicalOmegaSq => plate.d_rigidity / (material.rho * plate.h),
    }
}

/// Biharmonic governing rows on interior nodes `i = 2..n-3`, `j = 2..m-3`
/// (0-based): `w_xxxx + 2 w_xxyy + w_yyyy` scaled into the builder's
/// eigenvalue convention.
pub fn assemble_plate(
    builder: &mut SystemBuilder,
    grids: (&Grid1D, &Grid1D),
    diffs: (&DiffMatrixSet, &DiffMatrixSet),
    material: &Material,
    plate: &PlateSection,
) -> Result<()> {
    let (gx, gy) = grids;
    let (dx, dy) = diffs;
    let n = gx.len();
    let m = gy.len();
    if n < 7 || m < 7 {
        return Err(Error::InvalidGrid(format!(
            "plate needs at least 7x7 points, got {n}x{m}"
        )));
    }
    let factor = plate_scale(builder.scale(), material, plate);
    let c4x = dx.order(4).clone();
    let c2x = dx.order(2).clone();
    let c4y = dy.order(4).clone();
    let c2y = dy.order(2).clone();

    for i in 2..n - 2 {
        for j in 2..m - 2 {
            let row_dof = builder.map().dof(Region::Plate, i, j);
            let map = builder.map().clone();
            let mut row = builder.claim(row_dof, RowKind::GoverningPlate)?;
            for k in 0..n {
                row.add(map.dof(Region::Plate, k, j), factor * c4x[(i, k)]);
            }
            for l in 0..m {
                row.add(map.dof(Region::Plate, i, l), factor * c4y[(j, l)]);
            }
            for k in 0..n {
                let cik = c2x[(i, k)];
                if cik == 0.0 {
                    continue;
                }
                for l in 0..m {
                    row.add(
                        map.dof(Region::Plate, k, l),
                        2.0 * factor * cik * c2y[(j, l)],
                    );
                }
            }
        }
    }
    Ok(())
}

/// Boundary rows of the four edges, honoring the ownership map in the
/// module docs. Footprint columns of a coupled west edge are skipped here;
/// the coupled assembler claims them.
pub fn assemble_plate_edges(
    builder: &mut SystemBuilder,
    grids: (&Grid1D, &Grid1D),
    diffs: (&DiffMatrixSet, &DiffMatrixSet),
    nu: f64,
    edges: PlateEdges,
    footprint_cols: &[usize],
) -> Result<()> {
    let (gx, gy) = grids;
    let (dx, dy) = diffs;
    let n = gx.len();
    let m = gy.len();

    // x-edges: full second columns j = 1..m-2.
    for j in 1..m - 1 {
        let skip = footprint_cols.contains(&j);
        match edges.west {
            EdgeCondition::CoupledFootprint if skip => {}
            EdgeCondition::Clamped => {
                clamped_pair_x(builder, gx, dx, n, m, 0, j)?;
            }
            _ => {
                free_pair_x(builder, gx, dx, dy, nu, n, m, 0, j)?;
            }
        }
        match edges.east {
            EdgeCondition::Clamped => clamped_pair_x(builder, gx, dx, n, m, n - 1, j)?,
            _ => free_pair_x(builder, gx, dx, dy, nu, n, m, n - 1, j)?,
        }
    }

    // y-edges: boundary rows i = 1..n-2, adjacent rows i = 2..n-3.
    for i in 1..n - 1 {
        match edges.south {
            EdgeCondition::Clamped => clamped_boundary_y(builder, m, i, 0)?,
            _ => free_moment_y(builder, dx, dy, nu, n, m, i, 0)?,
        }
        match edges.north {
            EdgeCondition::Clamped => clamped_boundary_y(builder, m, i, m - 1)?,
            _ => free_moment_y(builder, dx, dy, nu, n, m, i, m - 1)?,
        }
    }
    for i in 2..n - 2 {
        match edges.south {
            EdgeCondition::Clamped => clamped_adjacent_y(builder, gy, dy, n, m, i, 0)?,
            _ => free_shear_y(builder, gy, dx, dy, nu, n, m, i, 0)?,
        }
        match edges.north {
            EdgeCondition::Clamped => clamped_adjacent_y(builder, gy, dy, n, m, i, m - 1)?,
            _ => free_shear_y(builder, gy, dx, dy, nu, n, m, i, m - 1)?,
        }
    }

    // Corners: twist condition between two free edges, zero displacement
    // when either adjoining edge pins the deflection.
    for (ci, cj, ex, ey) in [
        (0, 0, edges.west, edges.south),
        (0, m - 1, edges.west, edges.north),
        (n - 1, 0, edges.east, edges.south),
        (n - 1, m - 1, edges.east, edges.north),
    ] {
        let pinned = matches!(ex, EdgeCondition::Clamped) || matches!(ey, EdgeCondition::Clamped);
        let in_footprint =
            matches!(ex, EdgeCondition::CoupledFootprint) && footprint_cols.contains(&cj);
        if in_footprint {
            continue; // coupled assembler owns this corner
        }
        let dof = builder.map().dof(Region::Plate, ci, cj);
        if pinned {
            builder
                .claim(dof, RowKind::PlateEdgeDisplacement)?
                .add(dof, 1.0);
        } else {
            corner_twist(builder, dx, dy, n, m, ci, cj)?;
        }
    }
    Ok(())
}

/// Moment + shear rows of a free x-edge at grid column `edge` (0 or n-1),
/// owned by nodes `(edge, j)` and the adjacent `(edge +/- 1, j)`.
#[allow(clippy::too_many_arguments)]
fn free_pair_x(
    builder: &mut SystemBuilder,
    gx: &Grid1D,
    dx: &DiffMatrixSet,
    dy: &DiffMatrixSet,
    nu: f64,
    n: usize,
    m: usize,
    edge: usize,
    j: usize,
) -> Result<()> {
    let map = builder.map().clone();
    let adj = if edge == 0 { 1 } else { n - 2 };
    let ev = second_row_eval(gx, edge);
    let c1x = dx.order(1);
    let c2x = dx.order(2);
    let c3x = dx.order(3);
    let c2y = dy.order(2);

    // Moment: w_xx + nu w_yy = 0 at the edge.
    let dof = map.dof(Region::Plate, edge, j);
    let mut row = builder.claim(dof, RowKind::PlateEdgeMoment)?;
    for k in 0..n {
        row.add(map.dof(Region::Plate, k, j), c2x[(edge, k)]);
    }
    for l in 0..m {
        row.add(map.dof(Region::Plate, edge, l), nu * c2y[(j, l)]);
    }

    // Effective shear: w_xxx + (2 - nu) w_xyy = 0, collocated at `ev`.
    let dof = map.dof(Region::Plate, adj, j);
    let mut row = builder.claim(dof, RowKind::PlateEdgeShear)?;
    for k in 0..n {
        row.add(map.dof(Region::Plate, k, j), c3x[(ev, k)]);
    }
    for k in 0..n {
        let c1 = c1x[(ev, k)];
        if c1 == 0.0 {
            continue;
        }
        for l in 0..m {
            row.add(map.dof(Region::Plate, k, l), (2.0 - nu) * c1 * c2y[(j, l)]);
        }
    }
    Ok(())
}

/// Displacement + slope rows of a clamped x-edge.
fn clamped_pair_x(
    builder: &mut SystemBuilder,
    gx: &Grid1D,
    dx: &DiffMatrixSet,
    n: usize,
    m: usize,
    edge: usize,
    j: usize,
) -> Result<()> {
    let map = builder.map().clone();
    let _ = m;
    let adj = if edge == 0 { 1 } else { n - 2 };
    let ev = second_row_eval(gx, edge);
    let dof = map.dof(Region::Plate, edge, j);
    builder
        .claim(dof, RowKind::PlateEdgeDisplacement)?
        .add(dof, 1.0);
    let c1x = dx.order(1);
    let dof = map.dof(Region::Plate, adj, j);
    let mut row = builder.claim(dof, RowKind::PlateEdgeSlope)?;
    for k in 0..n {
        row.add(map.dof(Region::Plate, k, j), c1x[(ev, k)]);
    }
    Ok(())
}

/// Moment row of a free y-edge: `w_yy + nu w_xx = 0` at `(i, edge)`.
#[allow(clippy::too_many_arguments)]
fn free_moment_y(
    builder: &mut SystemBuilder,
    dx: &DiffMatrixSet,
    dy: &DiffMatrixSet,
    nu: f64,
    n: usize,
    m: usize,
    i: usize,
    edge: usize,
) -> Result<()> {
    let map = builder.map().clone();
    let c2x = dx.order(2);
    let c2y = dy.order(2);
    let dof = map.dof(Region::Plate, i, edge);
    let mut row = builder.claim(dof, RowKind::PlateEdgeMoment)?;
    for l in 0..m {
        row.add(map.dof(Region::Plate, i, l), c2y[(edge, l)]);
    }
    for k in 0..n {
        row.add(map.dof(Region::Plate, k, edge), nu * c2x[(i, k)]);
    }
    Ok(())
}

/// Effective shear row of a free y-edge, carried by the adjacent node.
#[allow(clippy::too_many_arguments)]
fn free_shear_y(
    builder: &mut SystemBuilder,
    gy: &Grid1D,
    dx: &DiffMatrixSet,
    dy: &DiffMatrixSet,
    nu: f64,
    n: usize,
    m: usize,
    i: usize,
    edge: usize,
) -> Result<()> {
    let map = builder.map().clone();
    let adj = if edge == 0 { 1 } else { m - 2 };
    let ev = second_row_eval(gy, edge);
    let c2x = dx.order(2);
    let c1y = dy.order(1);
    let c3y = dy.order(3);
    let dof = map.dof(Region::Plate, i, adj);
    let mut row = builder.claim(dof, RowKind::PlateEdgeShear)?;
    for l in 0..m {
        row.add(map.dof(Region::Plate, i, l), c3y[(ev, l)]);
    }
    for l in 0..m {
        let c1 = c1y[(ev, l)];
        if c1 == 0.0 {
            continue;
        }
        for k in 0..n {
            row.add(map.dof(Region::Plate, k, l), (2.0 - nu) * c1 * c2x[(i, k)]);
        }
    }
    Ok(())
}

fn clamped_boundary_y(builder: &mut SystemBuilder, m: usize, i: usize, edge: usize) -> Result<()> {
    let _ = m;
    let dof = builder.map().dof(Region::Plate, i, edge);
    builder
        .claim(dof, RowKind::PlateEdgeDisplacement)?
        .add(dof, 1.0);
    Ok(())
}

fn clamped_adjacent_y(
    builder: &mut SystemBuilder,
    gy: &Grid1D,
    dy: &DiffMatrixSet,
    n: usize,
    m: usize,
    i: usize,
    edge: usize,
) -> Result<()> {
    let _ = n;
    let map = builder.map().clone();
    let adj = if edge == 0 { 1 } else { m - 2 };
    let ev = second_row_eval(gy, edge);
    let c1y = dy.order(1);
    let dof = map.dof(Region::Plate, i, adj);
    let mut row = builder.claim(dof, RowKind::PlateEdgeSlope)?;
    for l in 0..m {
        row.add(map.dof(Region::Plate, i, l), c1y[(ev, l)]);
    }
    Ok(())
}

/// Zero twisting curvature `w_xy = 0` at a free-free corner.
fn corner_twist(
    builder: &mut SystemBuilder,
    dx: &DiffMatrixSet,
    dy: &DiffMatrixSet,
    n: usize,
    m: usize,
    ci: usize,
    cj: usize,
) -> Result<()> {
    let map = builder.map().clone();
    let c1x = dx.order(1);
    let c1y = dy.order(1);
    let dof = map.dof(Region::Plate, ci, cj);
    let mut row = builder.claim(dof, RowKind::PlateCornerTwist)?;
    for k in 0..n {
        let a = c1x[(ci, k)];
        if a == 0.0 {
            continue;
        }
        for l in 0..m {
            row.add(map.dof(Region::Plate, k, l), a * c1y[(cj, l)]);
        }
    }
    Ok(())
}
