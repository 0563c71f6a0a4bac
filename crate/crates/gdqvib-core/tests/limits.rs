//! End-to-end behavior of the coupled assembly: stiff/soft beam limits,
//! the merged-cantilever consistency check, and the coupled case's mode
//! structure.

use gdqvib_core::eigen::solve_problem;
use gdqvib_core::presets::{build_problem, CaseKind, GridSizes, Method, PresetConfig};
use gdqvib_core::{reference_tables, ModeClass};

/// With a near-rigid beam welded across the whole edge, the coupled system
/// reduces to the cantilever plate.
#[test]
fn rigid_beam_limit_recovers_cfff() {
    let mut cfg = PresetConfig::new(CaseKind::Case4Coupled);
    cfg.params.beam_e = 200e9 * 1e6;
    cfg.params.beam_width = cfg.params.plate_b; // footprint = full edge
    let problem = build_problem(&cfg).unwrap();
    let sol = solve_problem(&problem).unwrap();
    let plate_modes: Vec<f64> = sol
        .modes
        .iter()
        .filter(|m| matches!(m.class, ModeClass::Plate | ModeClass::Coupled))
        .map(|m| m.nondim)
        .take(5)
        .collect();
    let tables = reference_tables();
    let reference = &tables["cfff_leissa"].values;
    for (i, (v, r)) in plate_modes.iter().zip(reference).enumerate() {
        assert!(
            ((v - r) / r).abs() < 0.02,
            "rigid-beam mode {i}: {v} vs CFFF {r}"
        );
    }
}

/// Matched properties, zero Poisson ratio, and a full-width footprint make
/// the beam-plate pair a single cantilever of the combined length: the
/// bending-classified coupled modes must match the merged beam's roots.
#[test]
fn merged_cylindrical_limit_matches_single_cantilever() {
    let mut cfg = PresetConfig::new(CaseKind::Case4Coupled);
    cfg.method = Method::Gdq;
    cfg.params.plate_nu = 0.0;
    cfg.params.beam_nu = 0.0;
    cfg.params.plate_h = cfg.params.beam_thickness;
    cfg.params.beam_width = cfg.params.plate_b;
    let problem = build_problem(&cfg).unwrap();
    let sol = solve_problem(&problem).unwrap();

    // Merged cantilever of length L + a with the same section.
    let merged_length = cfg.params.beam_length + cfg.params.plate_a;
    let scale = (cfg.params.beam_e
        * (cfg.params.beam_width * cfg.params.beam_thickness.powi(3) / 12.0)
        / (cfg.params.beam_rho
            * cfg.params.beam_width
            * cfg.params.beam_thickness
            * merged_length.powi(4)))
    .sqrt();
    let oracle: Vec<f64> = gdqvib_core::cantilever_bending_roots(3)
        .iter()
        .map(|bl| bl.powi(2) * scale)
        .collect();

    // Pick the coupled system's cylindrical bending modes: dominated by
    // bending plus plate motion, with the plate deflecting uniformly in y.
    let mut found = Vec::new();
    for mode in &sol.modes {
        if mode.omega <= 0.0 {
            continue;
        }
        let w = mode.field.plate.as_ref().unwrap();
        let (n, m) = w.dim();
        let mut max_dev = 0.0_f64;
        let mut max_abs = 0.0_f64;
        for i in 0..n {
            let row_mean: f64 = (0..m).map(|j| w[(i, j)]).sum::<f64>() / m as f64;
            for j in 0..m {
                max_dev = max_dev.max((w[(i, j)] - row_mean).abs());
            }
            max_abs = max_abs.max(row_mean.abs());
        }
        let u_max = mode
            .field
            .beam_u
            .as_ref()
            .unwrap()
            .iter()
            .fold(0.0_f64, |acc, v| acc.max(v.abs()));
        if max_dev < 1e-4 && max_abs.max(u_max) > 0.5 {
            found.push(mode.omega);
        }
        if found.len() == 3 {
            break;
        }
    }
    assert!(found.len() >= 2, "expected cylindrical modes, got {found:?}");
    for (i, (v, o)) in found.iter().zip(&oracle).enumerate() {
        assert!(
            ((v - o) / o).abs() < 0.02,
            "merged mode {i}: {v} rad/s vs cantilever {o} rad/s"
        );
    }
}

/// With a near-rigid plate the torsion branch reduces to the rod with a
/// tip disk: the first torsion-dominated frequency approaches the
/// `alpha tan(alpha) = R_theta` root for the plate's polar inertia.
#[test]
fn rigid_plate_limit_matches_disk_oracle() {
    let mut cfg = PresetConfig::new(CaseKind::Case4Coupled);
    cfg.params.plate_e = 200e9 * 1e6;
    let problem = build_problem(&cfg).unwrap();
    let sol = solve_problem(&problem).unwrap();

    let beam = problem.beam.as_ref().unwrap();
    let i_d = cfg.params.plate_rho
        * cfg.params.plate_h
        * cfg.params.plate_a
        * cfg.params.plate_b.powi(3)
        / 12.0;
    let r_theta = beam.material.rho * beam.section.polar_ip * beam.section.length / i_d;
    let alpha = gdqvib_core::tip_inertia_torsion_roots(r_theta, 1).unwrap()[0];
    let c_t = (beam.material.g * beam.section.torsion_j
        / (beam.material.rho * beam.section.polar_ip))
        .sqrt();
    let omega_oracle = alpha * c_t / beam.section.length;

    let torsion = sol
        .modes
        .iter()
        .find(|m| m.fractions.beam_torsion > 0.5)
        .expect("torsion-dominated mode");
    let err = (torsion.omega - omega_oracle).abs() / omega_oracle;
    // The rigid-section weld spans three grid nodes (wider than the
    // physical footprint at this resolution), so the lever arm and the
    // captured polar inertia are approximate.
    assert!(
        err < 0.35,
        "torsion pendulum {} rad/s vs disk oracle {omega_oracle} rad/s (rel err {err:.3})",
        torsion.omega
    );
}

/// Canonical coupled run: mode structure the diagnostics rely on.
#[test]
fn coupled_case_mode_structure() {
    let cfg = PresetConfig::new(CaseKind::Case4Coupled);
    let problem = build_problem(&cfg).unwrap();
    let window = problem.window.as_ref().unwrap();
    assert!(window.cols.len() >= 3);
    assert!(window.widened());

    let sol = solve_problem(&problem).unwrap();
    assert!(sol.modes.len() > 10);
    for mode in &sol.modes {
        assert!(mode.eigenvalue >= 0.0);
        assert!(mode.residual < 1e-8);
    }
    assert_eq!(sol.modes[0].class, ModeClass::BeamBending);
    assert_eq!(sol.modes[1].class, ModeClass::BeamTorsion);
    let coupled_below_200 = sol
        .modes
        .iter()
        .any(|m| m.hz < 200.0 && m.class == ModeClass::Coupled);
    assert!(coupled_below_200);
}

/// Aggregate mesh-refinement indicator for the coupled case: successive
/// refinements shrink the first-five spectrum differences. Sizes below 13
/// leave the footprint spanning most of the edge and are excluded.
#[test]
fn coupled_case_mesh_convergence() {
    let spectra: Vec<Vec<f64>> = [13usize, 15, 17, 19]
        .iter()
        .map(|&k| {
            let mut cfg = PresetConfig::new(CaseKind::Case4Coupled);
            cfg.sizes = GridSizes::square(k);
            let problem = build_problem(&cfg).unwrap();
            low_real_spectrum(&problem, 5)
        })
        .collect();
    let coarse: f64 = (0..5)
        .map(|i| (spectra[1][i] - spectra[0][i]).abs())
        .sum();
    let fine: f64 = (0..5)
        .map(|i| (spectra[3][i] - spectra[2][i]).abs())
        .sum();
    assert!(
        fine < coarse,
        "refinement differences grew: fine {fine:.3e} vs coarse {coarse:.3e}"
    );
}

/// Lowest real positive angular frequencies of the raw condensed system
/// (bypasses the per-preset spectral gating so coarse grids can be
/// compared too).
fn low_real_spectrum(problem: &gdqvib_core::Problem, count: usize) -> Vec<f64> {
    use ndarray_linalg::Eig;
    let parts = gdqvib_core::partition(&problem.system).unwrap();
    let cond = gdqvib_core::condense(&parts).unwrap();
    let (vals, _) = cond.matrix.eig().unwrap();
    let max_re = vals.iter().fold(0.0_f64, |acc, v| acc.max(v.re.abs()));
    let mut out: Vec<f64> = vals
        .iter()
        .filter(|v| v.im.abs() <= 1e-6 * v.re.abs().max(1e-12 * max_re) && v.re > 0.0)
        .map(|v| v.re.sqrt())
        .collect();
    out.sort_by(|a, b| a.partial_cmp(b).unwrap());
    out.truncate(count);
    out
}
