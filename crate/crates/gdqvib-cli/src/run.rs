//! Run orchestration: assemble, condense, solve, and write artifacts;
//! grid sweeps run the same pipeline per size.

use std::fmt::Write as _;
use std::path::Path;

use gdqvib_core::{build_problem, solve_problem, Error as CoreError, ModalSolution, Problem};

use crate::config::RunConfig;
use crate::output;
use crate::plot;

/// Process exit codes.
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_ACCOUNTING: i32 = 3;
pub const EXIT_SINGULAR: i32 = 4;
pub const EXIT_ASSERTION: i32 = 5;
pub const EXIT_OTHER: i32 = 1;

#[derive(Debug)]
pub struct RunError {
    pub message: String,
    pub code: i32,
}

impl RunError {
    fn from_core(err: CoreError) -> Self {
        let code = match &err {
            CoreError::Accounting(_) => EXIT_ACCOUNTING,
            CoreError::SingularBoundaryBlock(_) => EXIT_SINGULAR,
            CoreError::PresetAssertion(_) => EXIT_ASSERTION,
            CoreError::InvalidGrid(_) | CoreError::InvalidParameter(_) => EXIT_CONFIG,
            _ => EXIT_OTHER,
        };
        Self {
            message: err.to_string(),
            code,
        }
    }
}

/// Solve one configuration and write its artifact files into `dir`.
pub fn execute(cfg: &RunConfig, dir: &Path) -> Result<(Problem, ModalSolution), RunError> {
    let problem = build_problem(&cfg.preset_config()).map_err(RunError::from_core)?;
    for assertion in &problem.assertions {
        if !assertion.holds() {
            return Err(RunError {
                message: format!(
                    "preset assertion failed: {} computed {} vs expected {} (tolerance {})",
                    assertion.name,
                    assertion.computed,
                    assertion.expected,
                    assertion.tolerance_rel
                ),
                code: EXIT_ASSERTION,
            });
        }
    }
    let solution = solve_problem(&problem).map_err(RunError::from_core)?;

    let keep = cfg.modes.min(solution.modes.len());
    let io_err = |e: std::io::Error| RunError {
        message: format!("writing artifacts under {}: {e}", dir.display()),
        code: EXIT_OTHER,
    };

    output::write_text(
        &dir.join("frequencies.csv"),
        &output::frequencies_csv(&solution.modes[..keep]),
    )
    .map_err(io_err)?;

    let rows = output::error_rows(cfg.preset.kind(), &problem, &solution);
    if !rows.is_empty() {
        output::write_text(&dir.join("errors.csv"), &output::errors_csv(&rows)).map_err(io_err)?;
    }

    for (idx, mode) in solution.modes.iter().take(keep).enumerate() {
        let text = output::mode_shape_file(&problem, mode, idx);
        output::write_text(&dir.join(format!("mode_{:02}.txt", idx + 1)), &text).map_err(io_err)?;
        if cfg.plots {
            plot::render_mode(&problem, mode, &dir.join(format!("mode_{:02}.png", idx + 1)))
                .map_err(|message| RunError {
                    message,
                    code: EXIT_OTHER,
                })?;
        }
    }

    let summary = output::run_summary(cfg, &problem, &solution, keep);
    let json = serde_json::to_string_pretty(&summary).map_err(|e| RunError {
        message: format!("serializing run summary: {e}"),
        code: EXIT_OTHER,
    })?;
    output::write_text(&dir.join("run.json"), &json).map_err(io_err)?;

    Ok((problem, solution))
}

/// Run the preset at several grid sizes; per-size artifacts land in
/// subdirectories and the aggregate table in `sweep.csv`, one row per
/// grid size and mode family so the rows line up with the published
/// per-family convergence tables.
pub fn execute_sweep(cfg: &RunConfig, sizes: &[usize]) -> Result<(), RunError> {
    use gdqvib_core::ModeClass;
    type FamilyRows = Vec<(ModeClass, Vec<f64>)>;
    let classes = [
        ModeClass::BeamBending,
        ModeClass::BeamTorsion,
        ModeClass::Plate,
        ModeClass::Coupled,
    ];
    let mut table: Vec<(usize, FamilyRows)> = Vec::new();
    for &k in sizes {
        let mut sub = cfg.clone();
        sub.sizes = gdqvib_core::GridSizes::square(k);
        sub.sweep = None;
        let dir = cfg.out_dir.join(format!("grid_{k}"));
        let (_, solution) = execute(&sub, &dir)?;
        let mut families = Vec::new();
        for class in classes {
            let freqs: Vec<f64> = solution
                .modes
                .iter()
                .filter(|m| m.class == class)
                .map(|m| m.nondim)
                .take(cfg.modes)
                .collect();
            if !freqs.is_empty() {
                families.push((class, freqs));
            }
        }
        table.push((k, families));
        println!("grid {k}: wrote {}", dir.display());
    }

    let cols = table
        .iter()
        .flat_map(|(_, fams)| fams.iter().map(|(_, f)| f.len()))
        .max()
        .unwrap_or(0);
    let mut out = String::from("grid,family");
    for i in 0..cols {
        let _ = write!(out, ",omega_{}", i + 1);
    }
    out.push('\n');
    for (k, families) in &table {
        for (class, freqs) in families {
            let _ = write!(out, "{k},{}", class.as_str());
            for i in 0..cols {
                match freqs.get(i) {
                    Some(v) => {
                        let _ = write!(out, ",{}", output::fmt_g(*v));
                    }
                    None => out.push(','),
                }
            }
            out.push('\n');
        }
    }
    output::write_text(&cfg.out_dir.join("sweep.csv"), &out).map_err(|e| RunError {
        message: format!("writing sweep table: {e}"),
        code: EXIT_OTHER,
    })?;
    Ok(())
}
