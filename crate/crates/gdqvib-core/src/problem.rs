//! An assembled eigenproblem with the geometry needed to interpret and
//! post-process its modes.

use ndarray::Array1;

use crate::assembly::{FootprintWindow, GlobalSystem, RowKind};
use crate::dq::{DiffMatrixSet, Grid1D};
use crate::model::{BeamSection, Material, NondimGroups, PlateSection};

/// Beam discretization and properties.
pub struct BeamPart {
    pub grid: Grid1D,
    pub diff: DiffMatrixSet,
    pub section: BeamSection,
    pub material: Material,
}

/// Plate discretization and properties.
pub struct PlatePart {
    pub grid_x: Grid1D,
    pub grid_y: Grid1D,
    pub diff_x: DiffMatrixSet,
    pub diff_y: DiffMatrixSet,
    pub section: PlateSection,
    pub material: Material,
}

/// Outcome of a preset self-check (e.g. the tip-mass ratios).
#[derive(Debug, Clone)]
pub struct AssertionRecord {
    pub name: String,
    pub computed: f64,
    pub expected: f64,
    pub tolerance_rel: f64,
}

impl AssertionRecord {
    pub fn holds(&self) -> bool {
        (self.computed - self.expected).abs() <= self.tolerance_rel * self.expected.abs()
    }
}

/// Fully assembled problem ready for the eigensolver.
pub struct Problem {
    pub label: String,
    pub system: GlobalSystem,
    pub beam: Option<BeamPart>,
    pub plate: Option<PlatePart>,
    pub groups: NondimGroups,
    /// Spurious-eigenvalue cap in the assembly's eigenvalue units.
    pub eigen_cap: f64,
    pub window: Option<FootprintWindow>,
    pub assertions: Vec<AssertionRecord>,
}

impl Problem {
    /// Residual of every boundary/continuity row on a full-field vector,
    /// normalized by row norm times vector norm.
    pub fn boundary_residuals(&self, full: &Array1<f64>) -> Vec<(RowKind, f64)> {
        let a = &self.system.matrix;
        let v_norm = full.iter().map(|v| v * v).sum::<f64>().sqrt();
        self.system
            .map
            .boundary_indices()
            .into_iter()
            .map(|g| {
                let row = a.row(g);
                let row_norm = row.iter().map(|v| v * v).sum::<f64>().sqrt();
                let resid: f64 = row
                    .iter()
                    .zip(full.iter())
                    .map(|(rv, fv)| rv * fv)
                    .sum();
                (self.system.kinds[g], resid.abs() / (row_norm * v_norm))
            })
            .collect()
    }

    /// Residual of the interior (governing) rows of the unpartitioned
    /// system on a recovered eigenpair: `|A_I w - lambda w_I|` per row,
    /// normalized like `boundary_residuals`.
    pub fn interior_residuals(&self, full: &Array1<f64>, lambda: f64) -> Vec<f64> {
        let a = &self.system.matrix;
        let v_norm = full.iter().map(|v| v * v).sum::<f64>().sqrt();
        self.system
            .map
            .interior_indices()
            .into_iter()
            .map(|g| {
                let row = a.row(g);
                let row_norm = row
                    .iter()
                    .map(|v| v * v)
                    .sum::<f64>()
                    .sqrt()
                    .max(lambda.abs());
                let lhs: f64 = row
                    .iter()
                    .zip(full.iter())
                    .map(|(rv, fv)| rv * fv)
                    .sum();
                (lhs - lambda * full[g]).abs() / (row_norm * v_norm)
            })
            .collect()
    }
}
