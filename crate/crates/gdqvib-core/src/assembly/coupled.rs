//! Junction rows tying the beam tip to the plate edge x = 0.
//!
//! The attached plate-edge nodes follow the beam tip's rigid-section
//! motion, `w(0, y_j) = U_tip + Theta_tip (y_j - y_c)`, with slope
//! continuity `w_x(0, y_j) = U'(l)` at the adjacent column. The beam side
//! closes with three integral balance rows: bending moment and net
//! effective shear of the edge tractions balance `E1 I1 U''(l)` and
//! `E1 I1 U'''(l)`, and the first moment of the tractions about the beam
//! axis balances `G1 J1 Theta'(l)`. Quadrature over the footprint uses the
//! integrals of the Lagrange cardinal functions on the plate's y-grid.

use crate::assembly::{Region, RowKind, SystemBuilder};
use crate::dq::{cardinal_integrals, DiffMatrixSet, Grid1D};
use crate::error::{Error, Result};
use crate::model::{BeamSection, Material, PlateSection};

/// Attached-node window on the plate's y-grid.
///
/// Node selection is a coordinate test against the physical footprint
/// `[y_c - d/2, y_c + d/2]`; when fewer than three edge nodes fall inside
/// (coarse grids), the window widens symmetrically to the three nodes
/// nearest the beam axis so the junction keeps a torsion lever arm.
#[derive(Debug, Clone)]
pub struct FootprintWindow {
    /// y-grid column indices of the attached edge nodes.
    pub cols: Vec<usize>,
    /// Quadrature window actually used for the balance rows.
    pub lo: f64,
    pub hi: f64,
    /// Physical footprint half-width request.
    pub physical_lo: f64,
    pub physical_hi: f64,
    /// Beam axis position on the edge.
    pub y_c: f64,
}

impl FootprintWindow {
    pub fn locate(y_grid: &Grid1D, y_c: f64, width: f64) -> Result<Self> {
        let b = y_grid.length();
        let lo_req = y_c - width / 2.0;
        let hi_req = y_c + width / 2.0;
        if lo_req < -1e-12 * b || hi_req > b * (1.0 + 1e-12) {
            return Err(Error::InvalidParameter(format!(
                "beam footprint [{lo_req}, {hi_req}] exceeds the plate edge [0, {b}]"
            )));
        }
        let y = y_grid.points();
        let mut cols: Vec<usize> = (0..y.len())
            .filter(|&j| y[j] >= lo_req - 1e-12 * b && y[j] <= hi_req + 1e-12 * b)
            .collect();
        if cols.len() < 3 {
            // Take the three nodes nearest the beam axis (contiguous by
            // construction on a sorted grid).
            let mut ranked: Vec<usize> = (0..y.len()).collect();
            ranked.sort_by(|&a, &b2| {
                (y[a] - y_c)
                    .abs()
                    .partial_cmp(&(y[b2] - y_c).abs())
                    .unwrap()
            });
            cols = ranked[..3].to_vec();
            cols.sort_unstable();
        }
        // The working window is the attached-node span, so its ends sit on
        // grid nodes where the twisting-moment end terms of the balance
        // rows can be collocated.
        let lo = y[cols[0]];
        let hi = y[*cols.last().unwrap()];
        Ok(Self {
            cols,
            lo,
            hi,
            physical_lo: lo_req,
            physical_hi: hi_req,
            y_c,
        })
    }

    /// True when the window had to widen past the physical footprint.
    pub fn widened(&self) -> bool {
        self.lo < self.physical_lo || self.hi > self.physical_hi
    }
}

/// Data needed to emit the junction rows.
pub struct CouplingLayout<'a> {
    pub beam_grid: &'a Grid1D,
    pub beam_diff: &'a DiffMatrixSet,
    pub beam_material: &'a Material,
    pub beam: &'a BeamSection,
    pub plate_grids: (&'a Grid1D, &'a Grid1D),
    pub plate_diffs: (&'a DiffMatrixSet, &'a DiffMatrixSet),
    pub plate_material: &'a Material,
    pub plate: &'a PlateSection,
    pub window: &'a FootprintWindow,
}

impl CouplingLayout<'_> {
    /// Emit displacement/slope continuity on the attached plate columns and
    /// the three balance rows on the beam's junction DOFs.
    pub fn assemble(&self, builder: &mut SystemBuilder) -> Result<()> {
        let s = self.beam_grid.len();
        let (gx, gy) = self.plate_grids;
        let (dx, dy) = self.plate_diffs;
        let n = gx.len();
        let m = gy.len();
        let y = gy.points();
        let nu = self.plate_material.nu;
        let map = builder.map().clone();

        let u_dof: Vec<usize> = (0..s).map(|r| map.dof(Region::BeamBending, r, 0)).collect();
        let t_dof: Vec<usize> = (0..s).map(|r| map.dof(Region::BeamTorsion, r, 0)).collect();
        let z1 = self.beam_diff.order(1);
        let z2 = self.beam_diff.order(2);
        let z3 = self.beam_diff.order(3);
        let c1x = dx.order(1);
        let c2x = dx.order(2);
        let c3x = dx.order(3);
        let c2y = dy.order(2);

        // Kinematic rows on the attached columns.
        for &j in &self.window.cols {
            let lever = y[j] - self.window.y_c;
            let dof = map.dof(Region::Plate, 0, j);
            let mut row = builder.claim(dof, RowKind::ContinuityDisplacement)?;
            row.add(dof, 1.0);
            row.add(u_dof[s - 1], -1.0);
            row.add(t_dof[s - 1], -lever);

            // Slope continuity lives on the adjacent column, which the west
            // edge owns only away from the corners.
            if j >= 1 && j <= m - 2 {
                let dof = map.dof(Region::Plate, 1, j);
                let mut row = builder.claim(dof, RowKind::ContinuitySlope)?;
                for k in 0..n {
                    row.add(map.dof(Region::Plate, k, j), c1x[(0, k)]);
                }
                for (r, &col) in u_dof.iter().enumerate() {
                    row.add(col, -z1[(s - 1, r)]);
                }
            }
        }

        // Quadrature weights over the footprint window: zeroth moment for
        // force/moment resultants, first moment about the beam axis for the
        // torque balance.
        let q0 = cardinal_integrals(gy, self.window.lo, self.window.hi, 0, 0.0);
        let q1 = cardinal_integrals(gy, self.window.lo, self.window.hi, 1, self.window.y_c);

        let ei = self.beam_material.e * self.beam.bending_i;
        let gj = self.beam_material.g * self.beam.torsion_j;
        let d_rig = self.plate.d_rigidity;

        // Moment balance: E I U''(l) = D int (w_xx + nu w_yy) dy.
        let mut row = builder.claim(u_dof[s - 1], RowKind::BalanceMoment)?;
        for (r, &col) in u_dof.iter().enumerate() {
            row.add(col, ei * z2[(s - 1, r)]);
        }
        for (j, &qj) in q0.iter().enumerate() {
            if qj == 0.0 {
                continue;
            }
            for k in 0..n {
                row.add(map.dof(Region::Plate, k, j), -d_rig * qj * c2x[(0, k)]);
            }
            for l in 0..m {
                row.add(map.dof(Region::Plate, 0, l), -d_rig * qj * nu * c2y[(j, l)]);
            }
        }

        // Shear and torque balances over the attached segment.
        //
        // Integrating the Kelvin-Kirchhoff traction over a SEGMENT of the
        // edge leaves twisting-moment end terms behind (the boundary terms
        // that become corner forces on a full edge): the transmitted force
        // is `int V_x dy - [M_xy]` and the torque about the beam axis
        // `int (y - y_c) V_x dy - [(y - y_c) M_xy]`, brackets evaluated
        // between the segment ends. Without the end terms the static
        // coupled system is singular: a linearly twisted beam balanced by
        // a biharmonic plate field slips in as a spurious zero-frequency
        // mode.
        let j_lo = self.window.cols[0];
        let j_hi = *self.window.cols.last().unwrap();
        let mxy_coeff = d_rig * (1.0 - nu);

        // Shear balance: E I U'''(l) + int V_x dy - [M_xy] = 0.
        let mut row = builder.claim(u_dof[s - 2], RowKind::BalanceShear)?;
        for (r, &col) in u_dof.iter().enumerate() {
            row.add(col, ei * z3[(s - 1, r)]);
        }
        add_traction_integral(&mut row, &map, &q0, n, m, nu, -d_rig, c1x, c3x, c2y);
        for (j_end, sign) in [(j_hi, 1.0), (j_lo, -1.0)] {
            add_twist_moment(&mut row, &map, self.plate_diffs, n, m, j_end, sign * mxy_coeff);
        }

        // Torque balance:
        // G J Theta'(l) - (int (y - y_c) V_x dy - [(y - y_c) M_xy]) = 0.
        // The traction functional enters bending as `E I U''' = -F` but
        // torsion as `G J Theta' = +T` (second-order operator), hence the
        // opposite sign against the beam term.
        let mut row = builder.claim(t_dof[s - 1], RowKind::BalanceTorque)?;
        for (r, &col) in t_dof.iter().enumerate() {
            row.add(col, gj * z1[(s - 1, r)]);
        }
        add_traction_integral(&mut row, &map, &q1, n, m, nu, d_rig, c1x, c3x, c2y);
        for (j_end, sign) in [(j_hi, 1.0), (j_lo, -1.0)] {
            let lever = y[j_end] - self.window.y_c;
            add_twist_moment(
                &mut row,
                &map,
                self.plate_diffs,
                n,
                m,
                j_end,
                -sign * lever * mxy_coeff,
            );
        }

        Ok(())
    }
}

/// Accumulate `coeff * w_xy(0, y_j)` into a row (`M_xy = -D (1 - nu) w_xy`,
/// so callers fold the material factor and sign into `coeff`).
fn add_twist_moment(
    row: &mut crate::assembly::RowRef<'_>,
    map: &crate::assembly::DofMap,
    diffs: (&DiffMatrixSet, &DiffMatrixSet),
    n: usize,
    m: usize,
    j: usize,
    coeff: f64,
) {
    let c1x = diffs.0.order(1);
    let c1y = diffs.1.order(1);
    for k in 0..n {
        let a = c1x[(0, k)];
        if a == 0.0 {
            continue;
        }
        for l in 0..m {
            row.add(map.dof(Region::Plate, k, l), coeff * a * c1y[(j, l)]);
        }
    }
}

/// Accumulate `coeff * sum_j q_j (w_xxx + (2 - nu) w_xyy)(0, y_j)` into a row.
#[allow(clippy::too_many_arguments)]
fn add_traction_integral(
    row: &mut crate::assembly::RowRef<'_>,
    map: &crate::assembly::DofMap,
    q: &[f64],
    n: usize,
    m: usize,
    nu: f64,
    coeff: f64,
    c1x: &ndarray::Array2<f64>,
    c3x: &ndarray::Array2<f64>,
    c2y: &ndarray::Array2<f64>,
) {
    for (j, &qj) in q.iter().enumerate() {
        if qj == 0.0 {
            continue;
        }
        for k in 0..n {
            row.add(map.dof(Region::Plate, k, j), coeff * qj * c3x[(0, k)]);
        }
        for k in 0..n {
            let c1 = c1x[(0, k)];
            if c1 == 0.0 {
                continue;
            }
            for l in 0..m {
                row.add(
                    map.dof(Region::Plate, k, l),
                    coeff * qj * (2.0 - nu) * c1 * c2y[(j, l)],
                );
            }
        }
    }
}
