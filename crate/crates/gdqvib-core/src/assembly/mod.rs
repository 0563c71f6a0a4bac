//! Global discrete operator assembly: governing-equation rows on interior
//! nodes, boundary-condition rows, continuity rows at the beam-plate
//! junction, and the interior/boundary partition with condensation to a
//! standard eigenproblem.

mod beam;
mod coupled;
mod plate;

pub use beam::{
    assemble_beam_bending, assemble_beam_root, assemble_beam_torsion, assemble_bending_tip,
    assemble_torsion_free_root, assemble_torsion_tip, BeamEnd, BeamField,
};
pub use coupled::{CouplingLayout, FootprintWindow};
pub use plate::{assemble_plate, assemble_plate_edges, EdgeCondition, PlateEdges};

use ndarray::{Array1, Array2};
use ndarray_linalg::{Solve, SVD};

use crate::error::{Error, Result};

/// Field regions of the coupled system.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Region {
    BeamBending,
    BeamTorsion,
    Plate,
}

/// Provenance tag for one assembled row.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowKind {
    GoverningBeamBending,
    GoverningBeamTorsion,
    GoverningPlate,
    /// Eigenvalue-carrying tip row of the concentrated-mass beam.
    TipMassShear,
    TipInertiaTorque,
    BeamRootDisplacement,
    BeamRootSlope,
    BeamRootTwist,
    BeamFreeMoment,
    BeamFreeShear,
    TorsionFreeEnd,
    PlateEdgeMoment,
    PlateEdgeShear,
    PlateEdgeDisplacement,
    PlateEdgeSlope,
    PlateCornerTwist,
    ContinuityDisplacement,
    ContinuitySlope,
    BalanceMoment,
    BalanceShear,
    BalanceTorque,
}

impl RowKind {
    /// Governing and tip-mass rows carry the eigenvalue term.
    pub fn carries_mass(self) -> bool {
        matches!(
            self,
            RowKind::GoverningBeamBending
                | RowKind::GoverningBeamTorsion
                | RowKind::GoverningPlate
                | RowKind::TipMassShear
                | RowKind::TipInertiaTorque
        )
    }
}

/// One region's slot in the global DOF ordering.
#[derive(Debug, Clone)]
struct RegionBlock {
    region: Region,
    offset: usize,
    /// (n, m): plate grid dims, or (s, 1) for beam fields.
    dims: (usize, usize),
}

/// Bijection between global DOF indices and (region, axis indices), plus
/// the interior/boundary split.
#[derive(Debug, Clone)]
pub struct DofMap {
    blocks: Vec<RegionBlock>,
    total: usize,
    interior: Vec<bool>,
}

impl DofMap {
    pub fn total(&self) -> usize {
        self.total
    }

    pub fn regions(&self) -> impl Iterator<Item = Region> + '_ {
        self.blocks.iter().map(|b| b.region)
    }

    pub fn has_region(&self, region: Region) -> bool {
        self.blocks.iter().any(|b| b.region == region)
    }

    pub fn region_dims(&self, region: Region) -> Option<(usize, usize)> {
        self.blocks
            .iter()
            .find(|b| b.region == region)
            .map(|b| b.dims)
    }

    /// Global index of a region-local DOF; `j` is ignored for beam fields.
    pub fn dof(&self, region: Region, i: usize, j: usize) -> usize {
        let block = self
            .blocks
            .iter()
            .find(|b| b.region == region)
            .expect("region present in this problem");
        let (n, m) = block.dims;
        debug_assert!(i < n && j < m);
        block.offset + i * m + j
    }

    /// Region and axis indices of a global DOF.
    pub fn locate(&self, g: usize) -> (Region, usize, usize) {
        let block = self
            .blocks
            .iter()
            .rev()
            .find(|b| g >= b.offset)
            .expect("index within total");
        let local = g - block.offset;
        let m = block.dims.1;
        (block.region, local / m, local % m)
    }

    pub fn is_interior(&self, g: usize) -> bool {
        self.interior[g]
    }

    pub fn interior_indices(&self) -> Vec<usize> {
        (0..self.total).filter(|&g| self.interior[g]).collect()
    }

    pub fn boundary_indices(&self) -> Vec<usize> {
        (0..self.total).filter(|&g| !self.interior[g]).collect()
    }

    /// Interior DOF count P.
    pub fn p(&self) -> usize {
        self.interior.iter().filter(|&&b| b).count()
    }

    /// Boundary DOF count Q.
    pub fn q(&self) -> usize {
        self.total - self.p()
    }
}

/// Whether the eigenvalue of the assembled system is a per-region
/// nondimensional group or the shared physical `omega^2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EigenScale {
    /// Single-region problems: eigenvalue is that region's nondimensional
    /// frequency squared (`(beta L)^4` for bending).
    Nondim,
    /// Coupled or mixed problems: eigenvalue is `omega^2` in (rad/s)^2.
    PhysicalOmegaSq,
}

/// Square assembled system: one row per DOF; rows tagged with provenance
/// and the eigenvalue term implied on interior rows.
#[derive(Debug)]
pub struct GlobalSystem {
    pub matrix: Array2<f64>,
    pub map: DofMap,
    pub kinds: Vec<RowKind>,
    pub scale: EigenScale,
}

/// Mutable assembly state; regions claim rows and mark provenance.
pub struct SystemBuilder {
    matrix: Array2<f64>,
    map: DofMap,
    kinds: Vec<Option<RowKind>>,
    scale: EigenScale,
}

impl SystemBuilder {
    /// Lay out the global DOF ordering for the given regions.
    /// Beam regions pass dims `(s, 1)`, the plate `(n, m)`.
    pub fn new(regions: &[(Region, (usize, usize))], scale: EigenScale) -> Self {
        let mut blocks = Vec::new();
        let mut offset = 0;
        for &(region, dims) in regions {
            blocks.push(RegionBlock {
                region,
                offset,
                dims,
            });
            offset += dims.0 * dims.1;
        }
        let total = offset;
        Self {
            matrix: Array2::zeros((total, total)),
            map: DofMap {
                blocks,
                total,
                interior: vec![false; total],
            },
            kinds: vec![None; total],
            scale,
        }
    }

    pub fn map(&self) -> &DofMap {
        &self.map
    }

    pub fn scale(&self) -> EigenScale {
        self.scale
    }

    /// Claim the row owned by DOF `row` with provenance `kind`; interior
    /// status follows from whether the row kind carries mass.
    pub fn claim(&mut self, row: usize, kind: RowKind) -> Result<RowRef<'_>> {
        if let Some(existing) = self.kinds[row] {
            let (region, i, j) = self.map.locate(row);
            return Err(Error::Accounting(format!(
                "row for {region:?} dof ({i},{j}) already holds {existing:?}, cannot add {kind:?}"
            )));
        }
        self.kinds[row] = Some(kind);
        self.map.interior[row] = kind.carries_mass();
        Ok(RowRef {
            builder: self,
            row,
        })
    }

    /// Finish assembly; fails loudly when any DOF is missing its row.
    pub fn finish(self) -> Result<GlobalSystem> {
        let mut missing = Vec::new();
        for (g, kind) in self.kinds.iter().enumerate() {
            if kind.is_none() {
                let (region, i, j) = self.map.locate(g);
                missing.push(format!("{region:?}({i},{j})"));
            }
        }
        if !missing.is_empty() {
            return Err(Error::Accounting(format!(
                "{} DOFs have no equation: {}",
                missing.len(),
                missing.join(", ")
            )));
        }
        let kinds: Vec<RowKind> = self.kinds.into_iter().map(Option::unwrap).collect();
        Ok(GlobalSystem {
            matrix: self.matrix,
            map: self.map,
            kinds,
            scale: self.scale,
        })
    }
}

/// Accumulator for one claimed row.
pub struct RowRef<'a> {
    builder: &'a mut SystemBuilder,
    row: usize,
}

impl RowRef<'_> {
    pub fn add(&mut self, col: usize, value: f64) -> &mut Self {
        self.builder.matrix[(self.row, col)] += value;
        self
    }
}

/// Partitioned blocks of the global operator.
pub struct SystemMatrices {
    pub a_ii: Array2<f64>,
    pub a_ib: Array2<f64>,
    pub a_bi: Array2<f64>,
    pub a_bb: Array2<f64>,
    pub interior_ids: Vec<usize>,
    pub boundary_ids: Vec<usize>,
    pub map: DofMap,
    pub kinds: Vec<RowKind>,
    pub scale: EigenScale,
}

/// Split the square system into interior/boundary blocks.
///
/// Boundary rows are homogeneous, so each is equilibrated to unit max-abs
/// entry; the condensed spectrum is exactly invariant under this scaling
/// while the boundary block's conditioning improves.
pub fn partition(system: &GlobalSystem) -> Result<SystemMatrices> {
    let map = &system.map;
    let interior_ids = map.interior_indices();
    let boundary_ids = map.boundary_indices();
    let p = interior_ids.len();
    let q = boundary_ids.len();
    if p + q != map.total() {
        return Err(Error::Accounting(format!(
            "interior {p} + boundary {q} != total {}",
            map.total()
        )));
    }

    let mut scaled = system.matrix.clone();
    for &g in &boundary_ids {
        let row_max = scaled.row(g).iter().fold(0.0_f64, |acc, v| acc.max(v.abs()));
        if row_max == 0.0 {
            let (region, i, j) = map.locate(g);
            return Err(Error::Accounting(format!(
                "boundary row for {region:?}({i},{j}) is identically zero"
            )));
        }
        scaled.row_mut(g).mapv_inplace(|v| v / row_max);
    }

    let take = |rows: &[usize], cols: &[usize]| {
        let mut block = Array2::<f64>::zeros((rows.len(), cols.len()));
        for (bi, &r) in rows.iter().enumerate() {
            for (bj, &c) in cols.iter().enumerate() {
                block[(bi, bj)] = scaled[(r, c)];
            }
        }
        block
    };

    Ok(SystemMatrices {
        a_ii: take(&interior_ids, &interior_ids),
        a_ib: take(&interior_ids, &boundary_ids),
        a_bi: take(&boundary_ids, &interior_ids),
        a_bb: take(&boundary_ids, &boundary_ids),
        interior_ids,
        boundary_ids,
        map: map.clone(),
        kinds: system.kinds.clone(),
        scale: system.scale,
    })
}

/// Condensed standard eigenproblem plus the boundary recovery operator.
#[derive(Debug)]
pub struct Condensed {
    /// `A_II - A_IB A_BB^-1 A_BI`, size P x P.
    pub matrix: Array2<f64>,
    /// `R = -A_BB^-1 A_BI`, size Q x P; boundary DOFs are `R w_I`.
    pub recovery: Array2<f64>,
    /// 2-norm condition number of the (equilibrated) boundary block.
    pub cond_bb: f64,
}

/// Eliminate boundary DOFs through the massless boundary rows.
pub fn condense(sys: &SystemMatrices) -> Result<Condensed> {
    let q = sys.a_bb.nrows();
    let p = sys.a_ii.nrows();

    let (cond_bb, smallest_vec) = boundary_condition_number(&sys.a_bb)?;
    if !cond_bb.is_finite() {
        return Err(Error::SingularBoundaryBlock(nearly_dependent_rows(
            sys,
            smallest_vec.as_ref(),
        )));
    }

    // Column-by-column solve of A_BB X = A_BI; R = -X.
    let mut recovery = Array2::<f64>::zeros((q, p));
    for col in 0..p {
        let rhs: Array1<f64> = sys.a_bi.column(col).to_owned();
        let x = sys.a_bb.solve(&rhs).map_err(|e| {
            Error::SingularBoundaryBlock(format!(
                "LU solve failed ({e}); {}",
                nearly_dependent_rows(sys, smallest_vec.as_ref())
            ))
        })?;
        for r in 0..q {
            recovery[(r, col)] = -x[r];
        }
    }

    let matrix = &sys.a_ii + &sys.a_ib.dot(&recovery);
    if matrix.iter().any(|v| !v.is_finite()) {
        return Err(Error::SingularBoundaryBlock(format!(
            "condensed matrix has non-finite entries; cond(A_BB) = {cond_bb:e}"
        )));
    }
    Ok(Condensed {
        matrix,
        recovery,
        cond_bb,
    })
}

/// Condition number of the boundary block and the right singular vector of
/// its smallest singular value (pointing at nearly-dependent rows).
fn boundary_condition_number(a_bb: &Array2<f64>) -> Result<(f64, Option<Array1<f64>>)> {
    let (u, s, _vt) = a_bb
        .svd(true, false)
        .map_err(|e| Error::SingularBoundaryBlock(format!("SVD of A_BB failed: {e}")))?;
    let s_max = s.iter().cloned().fold(0.0_f64, f64::max);
    let s_min = s.iter().cloned().fold(f64::INFINITY, f64::min);
    let cond = if s_min > 0.0 {
        s_max / s_min
    } else {
        f64::INFINITY
    };
    // Left singular vector of the smallest singular value weights the rows.
    let smallest = u.map(|u| {
        let idx = s
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.partial_cmp(b.1).unwrap())
            .map(|(i, _)| i)
            .unwrap_or(0);
        u.column(idx).to_owned()
    });
    Ok((cond, smallest))
}

/// Human-readable list of the boundary rows implicated in near-singularity.
fn nearly_dependent_rows(sys: &SystemMatrices, weights: Option<&Array1<f64>>) -> String {
    let Some(w) = weights else {
        return "singular boundary block (no diagnostic vector)".to_string();
    };
    let mut ranked: Vec<(f64, usize)> = w
        .iter()
        .enumerate()
        .map(|(i, v)| (v.abs(), i))
        .collect();
    ranked.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap());
    let rows: Vec<String> = ranked
        .iter()
        .take(4)
        .map(|&(wt, bi)| {
            let g = sys.boundary_ids[bi];
            let (region, i, j) = sys.map.locate(g);
            format!("{:?} at {region:?}({i},{j}) weight {wt:.2e}", sys.kinds[g])
        })
        .collect();
    format!("nearly dependent boundary rows: {}", rows.join("; "))
}
