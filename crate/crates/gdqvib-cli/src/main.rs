//! Command-line frontend for the beam/plate/coupled vibration solver.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use gdqvib_cli::config::{self, Preset, RunConfig};
use gdqvib_cli::run;

#[derive(Parser)]
#[command(
    name = "gdqvib",
    about = "Free-vibration eigenanalysis of beams, plates, and locally supported panels \
             by generalized differential quadrature",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Assemble, solve, and write frequency tables, error reports, and
    /// mode-shape files for a case preset.
    Run(RunArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Case preset: case1_beam, case1_tipmass, case2_ffff, case3_cfff,
    /// case4_coupled, or custom (coupled topology with config-file values).
    #[arg(long)]
    preset: Option<String>,

    /// Grid selection: gdq (plain Chebyshev) or mgdq (delta-point grids).
    #[arg(long)]
    method: Option<String>,

    /// Grid sizes: SxNxM for coupled presets, NxM for plates, S for beams;
    /// a single number fans out to every axis.
    #[arg(long)]
    grid: Option<String>,

    /// Run the preset at several square grid sizes, e.g. 9,11,15.
    #[arg(long, value_name = "SIZES")]
    grid_sweep: Option<String>,

    /// Relative near-boundary offset of the delta-point grids.
    #[arg(long)]
    delta: Option<f64>,

    /// Number of modes to report.
    #[arg(long)]
    modes: Option<usize>,

    /// Config file (line-based key = value with [sections]).
    #[arg(long)]
    config: Option<PathBuf>,

    /// Output directory (default runs/<preset>).
    #[arg(long)]
    out: Option<PathBuf>,

    /// Render a PNG contour per reported mode.
    #[arg(long)]
    plots: bool,
}

fn build_config(args: &RunArgs) -> Result<RunConfig, config::ConfigError> {
    // Start from the preset named on the command line (or its default),
    // layer the config file on top, then let explicit flags win.
    let initial = match &args.preset {
        Some(name) => Preset::parse(name)?,
        None => Preset::Case(gdqvib_core::CaseKind::Case2Ffff),
    };
    let mut cfg = RunConfig::for_preset(initial);

    if let Some(path) = &args.config {
        let text = std::fs::read_to_string(path).map_err(|e| config::ConfigError {
            message: format!("reading {}: {e}", path.display()),
            line: None,
        })?;
        cfg.apply_file(&text)?;
        if let Some(name) = &args.preset {
            // The flag overrides a preset line in the file.
            let flag_preset = Preset::parse(name)?;
            if flag_preset != cfg.preset {
                let keep_params = cfg.params.clone();
                let keep = (cfg.method, cfg.sizes, cfg.delta, cfg.modes, cfg.plots);
                cfg = RunConfig::for_preset(flag_preset);
                cfg.params = keep_params;
                (cfg.method, cfg.sizes, cfg.delta, cfg.modes, cfg.plots) = keep;
            }
        }
    }

    if let Some(method) = &args.method {
        cfg.method = gdqvib_core::Method::parse(method).map_err(|e| config::ConfigError {
            message: e.to_string(),
            line: None,
        })?;
    }
    if let Some(grid) = &args.grid {
        cfg.apply_grid_spec(grid)?;
    }
    if let Some(delta) = args.delta {
        cfg.delta = delta;
    }
    if let Some(modes) = args.modes {
        cfg.modes = modes;
    }
    if let Some(out) = &args.out {
        cfg.out_dir = out.clone();
    } else {
        cfg.out_dir = PathBuf::from("runs").join(cfg.preset.name());
    }
    cfg.plots = cfg.plots || args.plots;
    if let Some(sweep) = &args.grid_sweep {
        let sizes: Result<Vec<usize>, _> = sweep
            .split(',')
            .map(|t| t.trim().parse::<usize>())
            .collect();
        cfg.sweep = Some(sizes.map_err(|_| config::ConfigError {
            message: format!("bad grid sweep '{sweep}'"),
            line: None,
        })?);
    }
    cfg.validate()?;
    Ok(cfg)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let Command::Run(args) = cli.command;

    let cfg = match build_config(&args) {
        Ok(cfg) => cfg,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(run::EXIT_CONFIG as u8);
        }
    };

    let result = match &cfg.sweep {
        Some(sizes) => run::execute_sweep(&cfg, sizes).map(|()| None),
        None => run::execute(&cfg, &cfg.out_dir).map(|(p, s)| Some((p, s))),
    };

    match result {
        Ok(Some((_, solution))) => {
            println!(
                "{}: {} modes retained (P={}, Q={}, cond(A_BB)={:.3e})",
                cfg.preset.name(),
                solution.report.n_retained,
                solution.report.p,
                solution.report.q,
                solution.report.cond_bb
            );
            for (i, mode) in solution.modes.iter().take(cfg.modes).enumerate() {
                println!(
                    "  mode {:2}: nondim {:12.6}  {:10.4} Hz  {}",
                    i + 1,
                    mode.nondim,
                    mode.hz,
                    mode.class.as_str()
                );
            }
            println!("artifacts: {}", cfg.out_dir.display());
            ExitCode::SUCCESS
        }
        Ok(None) => {
            println!("sweep table: {}", cfg.out_dir.join("sweep.csv").display());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code as u8)
        }
    }
}
