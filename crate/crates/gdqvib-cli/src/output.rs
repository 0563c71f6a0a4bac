//! Artifact writers: frequency and error tables, plain-text mode-shape
//! files, and the structured run summary.

use std::fmt::Write as _;
use std::fs;
use std::io;
use std::path::Path;

use gdqvib_core::{
    cantilever_bending_roots, cantilever_torsion_roots, reference_tables,
    tip_inertia_torsion_roots, tip_mass_bending_roots, CaseKind, ModalSolution, Mode, ModeClass,
    Problem,
};
use serde::Serialize;

use crate::config::RunConfig;

/// Frequencies reported by the paper for the coupled case, Hz. These are
/// diagnostics: the comparison is logged, not gated.
pub const COUPLED_REPORTED_HZ: [f64; 5] = [0.593, 2.675, 32.037, 118.276, 147.494];

/// `mode,nondim,hz,classification` rows for the retained modes.
pub fn frequencies_csv(modes: &[Mode]) -> String {
    let mut out = String::from("mode,nondim,hz,classification\n");
    for (idx, mode) in modes.iter().enumerate() {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            idx + 1,
            fmt_g(mode.nondim),
            fmt_g(mode.hz),
            mode.class.as_str()
        );
    }
    out
}

/// One reference comparison row.
pub struct ErrorRow {
    pub family: &'static str,
    pub mode: usize,
    pub computed: f64,
    pub reference: f64,
    pub percent_error: f64,
}

/// Reference comparison for a preset, mirroring the layout of the
/// published tables: computed vs reference vs percent error.
pub fn error_rows(kind: CaseKind, problem: &Problem, solution: &ModalSolution) -> Vec<ErrorRow> {
    let take = |class: ModeClass, k: usize| -> Vec<f64> {
        solution
            .modes
            .iter()
            .filter(|m| m.class == class)
            .map(|m| m.nondim)
            .take(k)
            .collect()
    };
    let pair = |family: &'static str, computed: Vec<f64>, reference: &[f64]| -> Vec<ErrorRow> {
        computed
            .iter()
            .zip(reference)
            .enumerate()
            .map(|(i, (c, r))| ErrorRow {
                family,
                mode: i + 1,
                computed: *c,
                reference: *r,
                percent_error: 100.0 * (c - r).abs() / r.abs(),
            })
            .collect()
    };

    match kind {
        CaseKind::Case1Beam => {
            let mut rows = pair(
                "bending",
                take(ModeClass::BeamBending, 8),
                &cantilever_bending_roots(8),
            );
            rows.extend(pair(
                "torsion",
                take(ModeClass::BeamTorsion, 8),
                &cantilever_torsion_roots(8),
            ));
            rows
        }
        CaseKind::Case1TipMass => {
            let r_z = problem.assertions[0].computed;
            let r_theta = problem.assertions[1].computed;
            let mut rows = pair(
                "bending",
                take(ModeClass::BeamBending, 8),
                &tip_mass_bending_roots(r_z, 8).unwrap_or_default(),
            );
            rows.extend(pair(
                "torsion",
                take(ModeClass::BeamTorsion, 8),
                &tip_inertia_torsion_roots(r_theta, 8).unwrap_or_default(),
            ));
            rows
        }
        CaseKind::Case2Ffff => {
            let tables = reference_tables();
            let reference = &tables["ffff_leissa_narita"].values;
            let first_elastic = solution
                .modes
                .iter()
                .map(|m| m.nondim)
                .find(|v| *v > 1.0)
                .unwrap_or(1.0);
            let elastic: Vec<f64> = solution
                .modes
                .iter()
                .map(|m| m.nondim)
                .filter(|v| *v > 1e-4 * first_elastic)
                .take(5)
                .collect();
            pair("plate", elastic, &reference[..5])
        }
        CaseKind::Case3Cfff => {
            let tables = reference_tables();
            let reference = &tables["cfff_leissa"].values;
            let computed: Vec<f64> = solution.modes.iter().map(|m| m.nondim).take(5).collect();
            pair("plate", computed, &reference[..5])
        }
        CaseKind::Case4Coupled => COUPLED_REPORTED_HZ
            .iter()
            .enumerate()
            .map(|(i, reported)| {
                let nearest = solution
                    .modes
                    .iter()
                    .map(|m| m.hz)
                    .min_by(|a, b| {
                        (a - reported).abs().partial_cmp(&(b - reported).abs()).unwrap()
                    })
                    .unwrap_or(f64::NAN);
                ErrorRow {
                    family: "reported_hz_diagnostic",
                    mode: i + 1,
                    computed: nearest,
                    reference: *reported,
                    percent_error: 100.0 * (nearest - reported).abs() / reported,
                }
            })
            .collect(),
    }
}

pub fn errors_csv(rows: &[ErrorRow]) -> String {
    let mut out = String::from("family,mode,computed,reference,percent_error\n");
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            r.family,
            r.mode,
            fmt_g(r.computed),
            fmt_g(r.reference),
            fmt_g(r.percent_error)
        );
    }
    out
}

/// Plain-text mode-shape file: plate deflection matrix (row = x index,
/// column = y index) and the beam deflection/rotation samples, with the
/// grid coordinates in the header. Values use the shortest representation
/// that round-trips exactly.
pub fn mode_shape_file(problem: &Problem, mode: &Mode, index: usize) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "# mode {} nondim={} hz={} class={}",
        index + 1,
        fmt_g(mode.nondim),
        fmt_g(mode.hz),
        mode.class.as_str()
    );
    if let Some(plate) = &problem.plate {
        let _ = writeln!(out, "# x: {}", join_g(plate.grid_x.points()));
        let _ = writeln!(out, "# y: {}", join_g(plate.grid_y.points()));
    }
    if let Some(beam) = &problem.beam {
        let _ = writeln!(out, "# beam_x: {}", join_g(beam.grid.points()));
    }
    if let Some(w) = &mode.field.plate {
        let _ = writeln!(out, "W:");
        for i in 0..w.nrows() {
            let row: Vec<String> = (0..w.ncols()).map(|j| fmt_g(w[(i, j)])).collect();
            let _ = writeln!(out, "{}", row.join(" "));
        }
    }
    if let Some(u) = &mode.field.beam_u {
        let _ = writeln!(out, "U:");
        let _ = writeln!(out, "{}", join_g(u.as_slice().unwrap()));
    }
    if let Some(theta) = &mode.field.beam_theta {
        let _ = writeln!(out, "Theta:");
        let _ = writeln!(out, "{}", join_g(theta.as_slice().unwrap()));
    }
    out
}

/// Parsed mode-shape file (the test harness re-reads what the CLI wrote).
pub struct ModeShapeFile {
    pub plate: Option<ndarray::Array2<f64>>,
    pub beam_u: Option<ndarray::Array1<f64>>,
    pub beam_theta: Option<ndarray::Array1<f64>>,
}

pub fn parse_mode_shape(text: &str) -> Result<ModeShapeFile, String> {
    let mut plate_rows: Vec<Vec<f64>> = Vec::new();
    let mut beam_u = None;
    let mut beam_theta = None;
    let mut section = "";
    for line in text.lines() {
        if line.starts_with('#') || line.trim().is_empty() {
            continue;
        }
        match line.trim() {
            "W:" => {
                section = "w";
                continue;
            }
            "U:" => {
                section = "u";
                continue;
            }
            "Theta:" => {
                section = "theta";
                continue;
            }
            _ => {}
        }
        let values: Vec<f64> = line
            .split_whitespace()
            .map(|t| t.parse::<f64>().map_err(|e| format!("bad value '{t}': {e}")))
            .collect::<Result<_, _>>()?;
        match section {
            "w" => plate_rows.push(values),
            "u" => beam_u = Some(ndarray::Array1::from_vec(values)),
            "theta" => beam_theta = Some(ndarray::Array1::from_vec(values)),
            _ => return Err(format!("data before a section header: '{line}'")),
        }
    }
    let plate = if plate_rows.is_empty() {
        None
    } else {
        let n = plate_rows.len();
        let m = plate_rows[0].len();
        if plate_rows.iter().any(|r| r.len() != m) {
            return Err("ragged plate matrix".into());
        }
        Some(ndarray::Array2::from_shape_fn((n, m), |(i, j)| {
            plate_rows[i][j]
        }))
    };
    Ok(ModeShapeFile {
        plate,
        beam_u,
        beam_theta,
    })
}

#[derive(Serialize)]
pub struct RunSummary {
    pub preset: String,
    pub method: String,
    pub grid: GridSummary,
    pub delta: f64,
    pub p: usize,
    pub q: usize,
    pub cond_bb: f64,
    pub eigen_cap: f64,
    pub n_eigenvalues: usize,
    pub n_retained: usize,
    pub n_out_of_range: usize,
    pub discarded_invalid: Vec<String>,
    pub max_residual: f64,
    pub assertions: Vec<AssertionSummary>,
    pub footprint: Option<FootprintSummary>,
    pub warnings: Vec<String>,
    pub modes: Vec<ModeSummary>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub diagnostics: Vec<DiagnosticSummary>,
}

#[derive(Serialize)]
pub struct GridSummary {
    pub s: usize,
    pub n: usize,
    pub m: usize,
}

#[derive(Serialize)]
pub struct AssertionSummary {
    pub name: String,
    pub computed: f64,
    pub expected: f64,
    pub holds: bool,
}

#[derive(Serialize)]
pub struct FootprintSummary {
    pub attached_columns: Vec<usize>,
    pub window: [f64; 2],
    pub physical: [f64; 2],
    pub widened: bool,
}

#[derive(Serialize)]
pub struct ModeSummary {
    pub mode: usize,
    pub nondim: f64,
    pub hz: f64,
    pub classification: String,
}

#[derive(Serialize)]
pub struct DiagnosticSummary {
    pub reported_hz: f64,
    pub nearest_hz: f64,
    pub percent_diff: f64,
    pub within_25_percent: bool,
}

pub fn run_summary(
    cfg: &RunConfig,
    problem: &Problem,
    solution: &ModalSolution,
    kept: usize,
) -> RunSummary {
    let report = &solution.report;
    let mut warnings = Vec::new();
    if let Some(plate) = &problem.plate {
        if plate.section.thin_plate_warning {
            warnings.push(format!(
                "plate thickness {} exceeds a tenth of the planform; thin-plate theory is strained",
                plate.section.h
            ));
        }
    }
    let diagnostics = if cfg.preset.kind() == CaseKind::Case4Coupled {
        COUPLED_REPORTED_HZ
            .iter()
            .map(|reported| {
                let nearest = solution
                    .modes
                    .iter()
                    .map(|m| m.hz)
                    .min_by(|a, b| {
                        (a - reported).abs().partial_cmp(&(b - reported).abs()).unwrap()
                    })
                    .unwrap_or(f64::NAN);
                let percent = 100.0 * (nearest - reported).abs() / reported;
                DiagnosticSummary {
                    reported_hz: *reported,
                    nearest_hz: nearest,
                    percent_diff: percent,
                    within_25_percent: percent <= 25.0,
                }
            })
            .collect()
    } else {
        Vec::new()
    };
    RunSummary {
        preset: cfg.preset.name().to_string(),
        method: cfg.method.as_str().to_string(),
        grid: GridSummary {
            s: cfg.sizes.s,
            n: cfg.sizes.n,
            m: cfg.sizes.m,
        },
        delta: cfg.delta,
        p: report.p,
        q: report.q,
        cond_bb: report.cond_bb,
        eigen_cap: report.eigen_cap,
        n_eigenvalues: report.n_eigenvalues,
        n_retained: report.n_retained,
        n_out_of_range: report.n_out_of_range,
        discarded_invalid: report.discarded_invalid.clone(),
        max_residual: report.max_residual,
        assertions: problem
            .assertions
            .iter()
            .map(|a| AssertionSummary {
                name: a.name.clone(),
                computed: a.computed,
                expected: a.expected,
                holds: a.holds(),
            })
            .collect(),
        footprint: problem.window.as_ref().map(|w| FootprintSummary {
            attached_columns: w.cols.clone(),
            window: [w.lo, w.hi],
            physical: [w.physical_lo, w.physical_hi],
            widened: w.widened(),
        }),
        warnings,
        modes: solution
            .modes
            .iter()
            .take(kept)
            .enumerate()
            .map(|(i, m)| ModeSummary {
                mode: i + 1,
                nondim: m.nondim,
                hz: m.hz,
                classification: m.class.as_str().to_string(),
            })
            .collect(),
        diagnostics,
    }
}

/// Shortest round-trip text for a float (printf %g in spirit, exact on
/// re-parse).
pub fn fmt_g(v: f64) -> String {
    format!("{v}")
}

fn join_g(values: &[f64]) -> String {
    values.iter().map(|v| fmt_g(*v)).collect::<Vec<_>>().join(" ")
}

pub fn write_text(path: &Path, text: &str) -> io::Result<()> {
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent)?;
    }
    fs::write(path, text)
}
