//! Beam bending and torsion rows: governing equations on interior nodes,
//! clamped-root and free-end boundary rows, and the eigenvalue-carrying tip
//! rows of the concentrated-mass configuration.

use crate::assembly::{EigenScale, Region, RowKind, SystemBuilder};
use crate::dq::{DiffMatrixSet, Grid1D};
use crate::error::{Error, Result};
use crate::model::{BeamSection, Material};

/// Evaluation node of the second boundary row at an end: both conditions
/// collocate at the end itself (see the plate module for the rationale).
fn second_row_eval(grid: &Grid1D, end: usize) -> usize {
    let _ = grid;
    end
}

/// End condition at the beam tip (the root is always clamped).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BeamEnd {
    /// Free end: zero moment and shear (bending), zero twist rate (torsion).
    Free,
    /// Concentrated tip mass with ratio `R_z = M / (rho A l)` for bending,
    /// or rotary inertia ratio `R_theta = rho Ip l / I_d` for torsion.
    TipMass(f64),
    /// Junction rows are emitted by the coupled assembler.
    Coupled,
}

/// Which beam field a row set belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BeamField {
    Bending,
    Torsion,
}

/// Eigenvalue factor turning the nondimensional operator into the builder's
/// scale: 1 for nondimensional assembly, the region's `omega_bar^2 ->
/// omega^2` conversion for physical assembly.
fn bending_scale(scale: EigenScale, material: &Material, beam: &BeamSection) -> f64 {
    match scale {
        EigenScale::Nondim => 1.0,
        EigenScale::PhysicalOmegaSq => {
            material.e * beam.bending_i / (material.rho * beam.area * beam.length.powi(4))
        }
    }
}

fn torsion_scale(scale: EigenScale, material: &Material, beam: &BeamSection) -> f64 {
    match scale {
        EigenScale::Nondim => 1.0,
        EigenScale::PhysicalOmegaSq => {
            material.g * beam.torsion_j / (material.rho * beam.polar_ip * beam.length.powi(2))
        }
    }
}

/// Governing rows of transverse bending, `U'''' = omega_bar^2 U` in
/// normalized coordinates, on interior nodes `r = 2..s-3` (0-based; boundary
/// and adjacent nodes are excluded at both ends).
pub fn assemble_beam_bending(
    builder: &mut SystemBuilder,
    grid: &Grid1D,
    diff: &DiffMatrixSet,
    material: &Material,
    beam: &BeamSection,
) -> Result<()> {
    let s = grid.len();
    if s < 7 {
        return Err(Error::InvalidGrid(format!(
            "beam bending needs at least 7 points, got {s}"
        )));
    }
    let l4 = grid.length().powi(4);
    let factor = l4 * bending_scale(builder_scale(builder), material, beam);
    let z4 = diff.order(4);
    for r in 2..s - 2 {
        let row_dof = builder.map().dof(Region::BeamBending, r, 0);
        let cols: Vec<usize> = (0..s)
            .map(|k| builder.map().dof(Region::BeamBending, k, 0))
            .collect();
        let mut row = builder.claim(row_dof, RowKind::GoverningBeamBending)?;
        for (k, &col) in cols.iter().enumerate() {
            row.add(col, factor * z4[(r, k)]);
        }
    }
    Ok(())
}

/// Governing rows of torsion, `-Theta'' = omega_bar^2 Theta`, on interior
/// nodes `r = 1..s-2` (one boundary row at each end suffices for the
/// second-order operator).
pub fn assemble_beam_torsion(
    builder: &mut SystemBuilder,
    grid: &Grid1D,
    diff: &DiffMatrixSet,
    material: &Material,
    beam: &BeamSection,
) -> Result<()> {
    let s = grid.len();
    if s < 5 {
        return Err(Error::InvalidGrid(format!(
            "beam torsion needs at least 5 points, got {s}"
        )));
    }
    let l2 = grid.length().powi(2);
    let factor = -l2 * torsion_scale(builder_scale(builder), material, beam);
    let z2 = diff.order(2);
    for r in 1..s - 1 {
        let row_dof = builder.map().dof(Region::BeamTorsion, r, 0);
        let cols: Vec<usize> = (0..s)
            .map(|k| builder.map().dof(Region::BeamTorsion, k, 0))
            .collect();
        let mut row = builder.claim(row_dof, RowKind::GoverningBeamTorsion)?;
        for (k, &col) in cols.iter().enumerate() {
            row.add(col, factor * z2[(r, k)]);
        }
    }
    Ok(())
}

/// Clamped-root rows: `U_0 = 0`, `U'(0) = 0` (bending) and `Theta_0 = 0`
/// (torsion), for whichever of the two fields are present in the problem.
pub fn assemble_beam_root(
    builder: &mut SystemBuilder,
    grid: &Grid1D,
    diff: &DiffMatrixSet,
) -> Result<()> {
    let s = grid.len();
    if builder.map().has_region(Region::BeamBending) {
        let d0 = builder.map().dof(Region::BeamBending, 0, 0);
        builder.claim(d0, RowKind::BeamRootDisplacement)?.add(d0, 1.0);
        // Slope condition carried by the adjacent node.
        let ev = second_row_eval(grid, 0);
        let d1 = builder.map().dof(Region::BeamBending, 1, 0);
        let z1 = diff.order(1);
        let cols: Vec<usize> = (0..s)
            .map(|k| builder.map().dof(Region::BeamBending, k, 0))
            .collect();
        let mut row = builder.claim(d1, RowKind::BeamRootSlope)?;
        for (k, &col) in cols.iter().enumerate() {
            row.add(col, z1[(ev, k)]);
        }
    }
    if builder.map().has_region(Region::BeamTorsion) {
        let d0 = builder.map().dof(Region::BeamTorsion, 0, 0);
        builder.claim(d0, RowKind::BeamRootTwist)?.add(d0, 1.0);
    }
    Ok(())
}

/// Tip rows for the bending field.
///
/// Free: zero moment carried by the tip node, zero shear by its neighbor,
/// both evaluated at the tip. Tip mass: the shear balance
/// `E I U'''(l) = -M omega^2 U(l)` becomes the eigenvalue-carrying row
/// `-(1/R_z) U'''(1) = omega_bar^2 U(1)`, and only the moment row stays a
/// boundary condition.
pub fn assemble_bending_tip(
    builder: &mut SystemBuilder,
    grid: &Grid1D,
    diff: &DiffMatrixSet,
    material: &Material,
    beam: &BeamSection,
    end: BeamEnd,
) -> Result<()> {
    let s = grid.len();
    let cols: Vec<usize> = (0..s)
        .map(|k| builder.map().dof(Region::BeamBending, k, 0))
        .collect();
    let z2 = diff.order(2);
    let z3 = diff.order(3);
    let ev = second_row_eval(grid, s - 1);
    match end {
        BeamEnd::Free => {
            let tip = cols[s - 1];
            let mut row = builder.claim(tip, RowKind::BeamFreeMoment)?;
            for (k, &col) in cols.iter().enumerate() {
                row.add(col, z2[(s - 1, k)]);
            }
            let adj = cols[s - 2];
            let mut row = builder.claim(adj, RowKind::BeamFreeShear)?;
            for (k, &col) in cols.iter().enumerate() {
                row.add(col, z3[(ev, k)]);
            }
        }
        BeamEnd::TipMass(r_z) => {
            if r_z <= 0.0 {
                return Err(Error::InvalidParameter(format!(
                    "tip mass ratio must be positive, got {r_z}"
                )));
            }
            let l3 = grid.length().powi(3);
            let factor = -(l3 / r_z) * bending_scale(builder_scale(builder), material, beam);
            let tip = cols[s - 1];
            let mut row = builder.claim(tip, RowKind::TipMassShear)?;
            for (k, &col) in cols.iter().enumerate() {
                row.add(col, factor * z3[(s - 1, k)]);
            }
            let adj = cols[s - 2];
            let mut row = builder.claim(adj, RowKind::BeamFreeMoment)?;
            for (k, &col) in cols.iter().enumerate() {
                row.add(col, z2[(ev, k)]);
            }
        }
        BeamEnd::Coupled => {}
    }
    Ok(())
}

/// Tip rows for the torsion field.
///
/// Free: `Theta'(l) = 0`. Tip inertia: the torque balance
/// `G J Theta'(l) = I_d omega^2 Theta(l)` becomes the eigenvalue row
/// `R_theta Theta'(1) = omega_bar^2 Theta(1)`.
pub fn assemble_torsion_tip(
    builder: &mut SystemBuilder,
    grid: &Grid1D,
    diff: &DiffMatrixSet,
    material: &Material,
    beam: &BeamSection,
    end: BeamEnd,
) -> Result<()> {
    let s = grid.len();
    let cols: Vec<usize> = (0..s)
        .map(|k| builder.map().dof(Region::BeamTorsion, k, 0))
        .collect();
    let z1 = diff.order(1);
    match end {
        BeamEnd::Free => {
            let tip = cols[s - 1];
            let mut row = builder.claim(tip, RowKind::TorsionFreeEnd)?;
            for (k, &col) in cols.iter().enumerate() {
                row.add(col, z1[(s - 1, k)]);
            }
        }
        BeamEnd::TipMass(r_theta) => {
            if r_theta <= 0.0 {
                return Err(Error::InvalidParameter(format!(
                    "tip inertia ratio must be positive, got {r_theta}"
                )));
            }
            let factor =
                r_theta * grid.length() * torsion_scale(builder_scale(builder), material, beam);
            let tip = cols[s - 1];
            let mut row = builder.claim(tip, RowKind::TipInertiaTorque)?;
            for (k, &col) in cols.iter().enumerate() {
                row.add(col, factor * z1[(s - 1, k)]);
            }
        }
        BeamEnd::Coupled => {}
    }
    Ok(())
}

/// Free-end row at the ROOT for torsion (used by the free-free null-mode
/// check; replaces the clamped twist row).
pub fn assemble_torsion_free_root(
    builder: &mut SystemBuilder,
    grid: &Grid1D,
    diff: &DiffMatrixSet,
) -> Result<()> {
    let s = grid.len();
    let d0 = builder.map().dof(Region::BeamTorsion, 0, 0);
    let z1 = diff.order(1);
    let cols: Vec<usize> = (0..s)
        .map(|k| builder.map().dof(Region::BeamTorsion, k, 0))
        .collect();
    let mut row = builder.claim(d0, RowKind::TorsionFreeEnd)?;
    for (k, &col) in cols.iter().enumerate() {
        row.add(col, z1[(0, k)]);
    }
    Ok(())
}

fn builder_scale(builder: &SystemBuilder) -> EigenScale {
    builder.scale()
}
