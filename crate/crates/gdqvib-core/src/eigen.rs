//! Dense eigensolve of the condensed system, spurious-mode filtering,
//! boundary recovery, and mode classification by strain-energy fractions.

use ndarray::{Array1, Array2};
use ndarray_linalg::Eig;

use crate::assembly::{condense, partition, EigenScale, Region};
use crate::dq::full_weights;
use crate::error::{Error, Result};
use crate::model::FrequencyScale;
use crate::problem::Problem;

/// Relative imaginary-part tolerance for accepting an eigenvalue as real.
const IM_REL_TOL: f64 = 1e-6;
/// Absolute imaginary floor relative to the spectral radius (rigid-body
/// eigenvalues sit at roundoff scale where the relative test is meaningless).
const IM_ABS_FLOOR: f64 = 1e-12;
/// Allowed negative excursion relative to the spectral radius.
const NEG_REL_TOL: f64 = 1e-8;
/// Invalid-eigenvalue fraction that signals an assembly bug.
const MAX_INVALID_FRACTION: f64 = 0.2;
/// Energy fraction above which a mode is tagged with a single region.
const DOMINANT_FRACTION: f64 = 0.8;

/// Mode character tag.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModeClass {
    BeamBending,
    BeamTorsion,
    Plate,
    Coupled,
}

impl ModeClass {
    pub fn as_str(self) -> &'static str {
        match self {
            ModeClass::BeamBending => "beam_bending",
            ModeClass::BeamTorsion => "beam_torsion",
            ModeClass::Plate => "plate",
            ModeClass::Coupled => "coupled",
        }
    }
}

/// Strain-energy split between the three regions (fractions sum to 1 over
/// the regions present).
#[derive(Debug, Clone, Copy, Default)]
pub struct EnergyFractions {
    pub beam_bending: f64,
    pub beam_torsion: f64,
    pub plate: f64,
}

/// Mode shape samples per region.
#[derive(Debug, Clone)]
pub struct FullField {
    pub beam_u: Option<Array1<f64>>,
    pub beam_theta: Option<Array1<f64>>,
    pub plate: Option<Array2<f64>>,
}

/// One retained eigenpair.
#[derive(Debug, Clone)]
pub struct Mode {
    /// Eigenvalue in the assembly scale (omega^2 or omega_bar^2).
    pub eigenvalue: f64,
    /// Angular frequency (rad/s).
    pub omega: f64,
    pub hz: f64,
    /// Nondimensional frequency in the dominant region's scale.
    pub nondim: f64,
    pub class: ModeClass,
    pub fractions: EnergyFractions,
    /// `|C w - lambda w| / (|C|_F |w|)` on the condensed system.
    pub residual: f64,
    /// Full-field values in global DOF order (boundary DOFs recovered).
    pub full: Array1<f64>,
    pub field: FullField,
}

/// Solver bookkeeping: what was discarded and why.
#[derive(Debug, Clone)]
pub struct SolveReport {
    pub p: usize,
    pub q: usize,
    pub cond_bb: f64,
    pub eigen_cap: f64,
    pub n_eigenvalues: usize,
    pub n_retained: usize,
    pub n_out_of_range: usize,
    pub discarded_invalid: Vec<String>,
    pub max_residual: f64,
}

/// Sorted physical spectrum with shapes, classification, and diagnostics.
#[derive(Debug, Clone)]
pub struct ModalSolution {
    pub modes: Vec<Mode>,
    pub report: SolveReport,
}

/// Partition, condense, and solve a problem end to end.
pub fn solve_problem(problem: &Problem) -> Result<ModalSolution> {
    let parts = partition(&problem.system)?;
    let cond = condense(&parts)?;
    let p = parts.a_ii.nrows();
    let q = parts.a_bb.nrows();

    let (values, vectors) = cond
        .matrix
        .eig()
        .map_err(|e| Error::Eigen(format!("dense eigendecomposition failed: {e}")))?;

    // Tolerances are relative to the largest in-band magnitude; the raw
    // spectral radius is dominated by spurious outliers and would swallow
    // genuinely negative or complex in-band eigenvalues.
    let band_radius = values
        .iter()
        .map(|v| (v.re * v.re + v.im * v.im).sqrt())
        .filter(|&m| m <= problem.eigen_cap)
        .fold(0.0_f64, f64::max);

    let mut invalid = Vec::new();
    let mut out_of_range = 0usize;
    let mut in_band = 0usize;
    let mut kept: Vec<(f64, usize)> = Vec::new();
    for (idx, lam) in values.iter().enumerate() {
        // Magnitude cap first: DQ condensation always produces large
        // spurious outliers (often complex); they are expected debris, not
        // an assembly-bug signal.
        let magnitude = (lam.re * lam.re + lam.im * lam.im).sqrt();
        if magnitude > problem.eigen_cap {
            out_of_range += 1;
            continue;
        }
        in_band += 1;
        let im_ok = lam.im.abs() <= IM_REL_TOL * lam.re.abs().max(f64::MIN_POSITIVE)
            || lam.im.abs() <= IM_ABS_FLOOR * band_radius;
        let re_ok = lam.re >= -NEG_REL_TOL * band_radius;
        if !im_ok || !re_ok {
            invalid.push(format!("{:.6e}{:+.6e}i", lam.re, lam.im));
            continue;
        }
        kept.push((lam.re.max(0.0), idx));
    }
    if invalid.len() as f64 > MAX_INVALID_FRACTION * in_band.max(1) as f64 {
        return Err(Error::Eigen(format!(
            "{} of {} in-band eigenvalues are complex or negative beyond tolerance \
             (assembly bug suspected); first offenders: {}",
            invalid.len(),
            in_band,
            invalid.iter().take(3).cloned().collect::<Vec<_>>().join(", ")
        )));
    }
    kept.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap().then(a.1.cmp(&b.1)));

    let c_norm = cond.matrix.iter().map(|v| v * v).sum::<f64>().sqrt();
    let total = problem.system.map.total();
    let mut modes = Vec::with_capacity(kept.len());
    let mut max_residual = 0.0_f64;

    for (lambda, idx) in kept {
        let w_i: Array1<f64> = vectors.column(idx).iter().map(|c| c.re).collect();
        let w_norm = w_i.iter().map(|v| v * v).sum::<f64>().sqrt();
        if w_norm == 0.0 {
            continue;
        }
        let resid_vec = cond.matrix.dot(&w_i) - &w_i * lambda;
        let residual = resid_vec.iter().map(|v| v * v).sum::<f64>().sqrt() / (c_norm * w_norm);
        max_residual = max_residual.max(residual);

        let w_b = cond.recovery.dot(&w_i);
        let mut full = Array1::<f64>::zeros(total);
        for (k, &g) in parts.interior_ids.iter().enumerate() {
            full[g] = w_i[k];
        }
        for (k, &g) in parts.boundary_ids.iter().enumerate() {
            full[g] = w_b[k];
        }
        normalize(&mut full);

        let field = split_field(problem, &full);
        let fractions = energy_fractions(problem, &field);
        let class = classify(problem, fractions);
        let (omega, nondim) = frequencies(problem, lambda, class, fractions);

        modes.push(Mode {
            eigenvalue: lambda,
            omega,
            hz: omega / (2.0 * std::f64::consts::PI),
            nondim,
            class,
            fractions,
            residual,
            full,
            field,
        });
    }

    let report = SolveReport {
        p,
        q,
        cond_bb: cond.cond_bb,
        eigen_cap: problem.eigen_cap,
        n_eigenvalues: values.len(),
        n_retained: modes.len(),
        n_out_of_range: out_of_range,
        discarded_invalid: invalid,
        max_residual,
    };
    Ok(ModalSolution { modes, report })
}

/// Unit max-abs deflection; first component above a tenth of the peak is
/// made positive so repeated solves sign the shapes identically.
fn normalize(full: &mut Array1<f64>) {
    let max_abs = full.iter().fold(0.0_f64, |acc, v| acc.max(v.abs()));
    if max_abs == 0.0 {
        return;
    }
    let lead = full
        .iter()
        .find(|v| v.abs() > 0.1 * max_abs)
        .copied()
        .unwrap_or(1.0);
    let scale = if lead < 0.0 { -max_abs } else { max_abs };
    full.mapv_inplace(|v| v / scale);
}

fn split_field(problem: &Problem, full: &Array1<f64>) -> FullField {
    let map = &problem.system.map;
    let pick1 = |region: Region| -> Option<Array1<f64>> {
        map.region_dims(region).map(|(s, _)| {
            Array1::from_iter((0..s).map(|r| full[map.dof(region, r, 0)]))
        })
    };
    let plate = map.region_dims(Region::Plate).map(|(n, m)| {
        Array2::from_shape_fn((n, m), |(i, j)| full[map.dof(Region::Plate, i, j)])
    });
    FullField {
        beam_u: pick1(Region::BeamBending),
        beam_theta: pick1(Region::BeamTorsion),
        plate,
    }
}

/// Strain energy of each region for the sampled mode.
///
/// Rigid-body content stores no strain energy, so a plate translating with
/// the beam tip does not masquerade as a plate mode: the tags follow where
/// the deformation lives.
fn energy_fractions(problem: &Problem, field: &FullField) -> EnergyFractions {
    let mut bending = 0.0;
    let mut torsion = 0.0;
    let mut plate_e = 0.0;

    if let (Some(beam), Some(u)) = (&problem.beam, &field.beam_u) {
        let w = full_weights(&beam.grid);
        let upp = beam.diff.order(2).dot(u);
        let ei = beam.material.e * beam.section.bending_i;
        bending = 0.5 * ei * w.iter().zip(upp.iter()).map(|(wr, v)| wr * v * v).sum::<f64>();
    }
    if let (Some(beam), Some(theta)) = (&problem.beam, &field.beam_theta) {
        let w = full_weights(&beam.grid);
        let tp = beam.diff.order(1).dot(theta);
        let gj = beam.material.g * beam.section.torsion_j;
        torsion = 0.5 * gj * w.iter().zip(tp.iter()).map(|(wr, v)| wr * v * v).sum::<f64>();
    }
    if let (Some(plate), Some(w_field)) = (&problem.plate, &field.plate) {
        let wx = full_weights(&plate.grid_x);
        let wy = full_weights(&plate.grid_y);
        let wxx = plate.diff_x.order(2).dot(w_field);
        let wyy = w_field.dot(&plate.diff_y.order(2).t());
        let wxy = plate.diff_x.order(1).dot(w_field).dot(&plate.diff_y.order(1).t());
        let nu = plate.material.nu;
        let d = plate.section.d_rigidity;
        let mut acc = 0.0;
        for i in 0..wx.len() {
            for j in 0..wy.len() {
                let (a, b, c) = (wxx[(i, j)], wyy[(i, j)], wxy[(i, j)]);
                acc += wx[i] * wy[j] * (a * a + b * b + 2.0 * nu * a * b + 2.0 * (1.0 - nu) * c * c);
            }
        }
        plate_e = 0.5 * d * acc;
    }

    let total = bending + torsion + plate_e;
    if total <= 0.0 {
        // No measurable strain (rigid-body mode): fall back to amplitude.
        return amplitude_fractions(field);
    }
    EnergyFractions {
        beam_bending: bending / total,
        beam_torsion: torsion / total,
        plate: plate_e / total,
    }
}

fn amplitude_fractions(field: &FullField) -> EnergyFractions {
    let sq = |v: &Array1<f64>| v.iter().map(|x| x * x).sum::<f64>();
    let bending = field.beam_u.as_ref().map_or(0.0, sq);
    let torsion = field.beam_theta.as_ref().map_or(0.0, sq);
    let plate = field
        .plate
        .as_ref()
        .map_or(0.0, |w| w.iter().map(|x| x * x).sum::<f64>());
    let total = bending + torsion + plate;
    if total <= 0.0 {
        return EnergyFractions::default();
    }
    EnergyFractions {
        beam_bending: bending / total,
        beam_torsion: torsion / total,
        plate: plate / total,
    }
}

fn classify(problem: &Problem, fractions: EnergyFractions) -> ModeClass {
    let mut ranked = [
        (fractions.beam_bending, ModeClass::BeamBending),
        (fractions.beam_torsion, ModeClass::BeamTorsion),
        (fractions.plate, ModeClass::Plate),
    ];
    ranked.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap());
    let regions_present = problem.system.map.regions().count();
    if regions_present == 1 || ranked[0].0 >= DOMINANT_FRACTION {
        ranked[0].1
    } else {
        ModeClass::Coupled
    }
}

fn class_scale(class: ModeClass, fractions: EnergyFractions) -> FrequencyScale {
    match class {
        ModeClass::BeamBending => FrequencyScale::BeamBending,
        ModeClass::BeamTorsion => FrequencyScale::BeamTorsion,
        ModeClass::Plate => FrequencyScale::Plate,
        ModeClass::Coupled => {
            // Report in the scale of the largest contributor.
            let mut ranked = [
                (fractions.beam_bending, FrequencyScale::BeamBending),
                (fractions.beam_torsion, FrequencyScale::BeamTorsion),
                (fractions.plate, FrequencyScale::Plate),
            ];
            ranked.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap());
            ranked[0].1
        }
    }
}

/// Angular frequency and dominant-scale nondimensional value from the
/// assembly-scale eigenvalue.
fn frequencies(
    problem: &Problem,
    lambda: f64,
    class: ModeClass,
    fractions: EnergyFractions,
) -> (f64, f64) {
    let scale = class_scale(class, fractions);
    match problem.system.scale {
        EigenScale::PhysicalOmegaSq => {
            let omega = lambda.max(0.0).sqrt();
            (omega, problem.groups.to_nondim(omega, scale))
        }
        EigenScale::Nondim => {
            let nondim = match scale {
                FrequencyScale::BeamBending => lambda.max(0.0).powf(0.25),
                _ => lambda.max(0.0).sqrt(),
            };
            let omega = problem
                .groups
                .to_angular(nondim, scale)
                .unwrap_or(0.0);
            (omega, nondim)
        }
    }
}
