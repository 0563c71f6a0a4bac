//! Free-vibration eigenanalysis of a cantilever beam, a Kirchhoff plate,
//! and the coupled system of a free plate locally supported by an elastic
//! beam, discretized with the (modified) generalized differential
//! quadrature method.
//!
//! The pipeline: collocation grids and weighting-coefficient matrices
//! ([`dq`]), governing/boundary/continuity row assembly and condensation to
//! a standard eigenproblem ([`assembly`]), a dense nonsymmetric eigensolve
//! with mode classification ([`eigen`]), analytical reference solutions
//! ([`oracles`]), and the shipped case studies ([`presets`]).

pub mod assembly;
pub mod dq;
pub mod eigen;
pub mod error;
pub mod model;
pub mod oracles;
pub mod presets;
pub mod problem;

pub use assembly::{
    condense, partition, Condensed, DofMap, EigenScale, GlobalSystem, Region, RowKind,
    SystemMatrices,
};
pub use dq::{chebyshev_grid, delta_modified_grid, DiffMatrixSet, Grid1D, GridKind};
pub use eigen::{solve_problem, EnergyFractions, FullField, ModalSolution, Mode, ModeClass};
pub use error::{Error, Result};
pub use model::{
    flexural_rigidity, stress_resultants, BeamSection, FrequencyScale, Material, NondimGroups,
    PlateSection, StressResultants, TorsionModel,
};
pub use oracles::{
    cantilever_bending_roots, cantilever_torsion_roots, reference_tables,
    tip_inertia_torsion_roots, tip_inertia_torsion_roots_reported, tip_mass_bending_roots,
    tip_mass_bending_roots_reported, ReferenceSpectrum,
};
pub use presets::{build_problem, CaseKind, GridSizes, Method, ModelParams, PresetConfig};
pub use problem::{AssertionRecord, BeamPart, PlatePart, Problem};
