//! Run configuration: preset selection, grid sizes, method, and the
//! line-based `key = value` config file with bracketed sections.

use std::fmt;
use std::path::PathBuf;

use gdqvib_core::model::TorsionModel;
use gdqvib_core::presets::{CaseKind, GridSizes, Method, ModelParams, PresetConfig};

/// Configuration problem: message plus the offending line when it came
/// from a file.
#[derive(Debug)]
pub struct ConfigError {
    pub message: String,
    pub line: Option<usize>,
}

impl ConfigError {
    fn new(message: impl Into<String>) -> Self {
        Self {
            message: message.into(),
            line: None,
        }
    }

    fn at(line: usize, message: impl Into<String>) -> Self {
        Self {
            message: message.into(),
            line: Some(line),
        }
    }
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(line) => write!(f, "config line {line}: {}", self.message),
            None => write!(f, "config: {}", self.message),
        }
    }
}

impl std::error::Error for ConfigError {}

/// Which system to run: a shipped case study or the coupled topology with
/// user-supplied parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preset {
    Case(CaseKind),
    Custom,
}

impl Preset {
    pub fn parse(s: &str) -> Result<Self, ConfigError> {
        if s == "custom" {
            return Ok(Preset::Custom);
        }
        CaseKind::parse(s)
            .map(Preset::Case)
            .map_err(|e| ConfigError::new(e.to_string()))
    }

    pub fn kind(self) -> CaseKind {
        match self {
            Preset::Case(kind) => kind,
            Preset::Custom => CaseKind::Case4Coupled,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Preset::Case(kind) => kind.as_str(),
            Preset::Custom => "custom",
        }
    }
}

/// Fully resolved run configuration.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub preset: Preset,
    pub method: Method,
    pub sizes: GridSizes,
    pub delta: f64,
    pub modes: usize,
    pub params: ModelParams,
    pub out_dir: PathBuf,
    pub plots: bool,
    pub sweep: Option<Vec<usize>>,
}

impl RunConfig {
    pub fn for_preset(preset: Preset) -> Self {
        let base = PresetConfig::new(preset.kind());
        Self {
            preset,
            method: base.method,
            sizes: base.sizes,
            delta: base.delta,
            modes: 8,
            params: base.params,
            out_dir: PathBuf::from("runs").join(preset.name()),
            plots: false,
            sweep: None,
        }
    }

    /// Constraint checks shared by file and flag input.
    pub fn validate(&self) -> Result<(), ConfigError> {
        let kind = self.preset.kind();
        if kind.uses_beam() && self.sizes.s < 7 {
            return Err(ConfigError::new(format!(
                "beam grid size must be at least 7, got {}",
                self.sizes.s
            )));
        }
        if kind.uses_plate() && (self.sizes.n < 7 || self.sizes.m < 7) {
            return Err(ConfigError::new(format!(
                "plate grid sizes must be at least 7, got {}x{}",
                self.sizes.n, self.sizes.m
            )));
        }
        if !(1e-5..1e-1).contains(&self.delta) {
            return Err(ConfigError::new(format!(
                "delta must lie in (1e-5, 1e-1), got {}",
                self.delta
            )));
        }
        if self.modes == 0 {
            return Err(ConfigError::new("mode count must be positive"));
        }
        if let Some(sweep) = &self.sweep {
            if sweep.len() < 2 {
                return Err(ConfigError::new("grid sweep needs at least two sizes"));
            }
        }
        Ok(())
    }

    pub fn preset_config(&self) -> PresetConfig {
        PresetConfig {
            kind: self.preset.kind(),
            method: self.method,
            sizes: self.sizes,
            delta: self.delta,
            params: self.params.clone(),
        }
    }

    /// Apply a parsed config file on top of the current state.
    pub fn apply_file(&mut self, text: &str) -> Result<(), ConfigError> {
        let mut section = String::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = strip_comment(raw).trim();
            if line.is_empty() {
                continue;
            }
            if let Some(name) = line.strip_prefix('[') {
                let name = name
                    .strip_suffix(']')
                    .ok_or_else(|| ConfigError::at(line_no, "unterminated section header"))?;
                match name {
                    "material" | "beam" | "plate" | "solver" => section = name.to_string(),
                    other => {
                        return Err(ConfigError::at(line_no, format!("unknown section [{other}]")))
                    }
                }
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| ConfigError::at(line_no, format!("expected key = value, got '{line}'")))?;
            let key = key.trim();
            let value = value.trim();
            self.apply_key(&section, key, value)
                .map_err(|e| ConfigError::at(line_no, e.message))?;
        }
        Ok(())
    }

    fn apply_key(&mut self, section: &str, key: &str, value: &str) -> Result<(), ConfigError> {
        let num = || -> Result<f64, ConfigError> {
            value
                .parse::<f64>()
                .map_err(|_| ConfigError::new(format!("'{value}' is not a number")))
        };
        let int = || -> Result<usize, ConfigError> {
            value
                .parse::<usize>()
                .map_err(|_| ConfigError::new(format!("'{value}' is not a positive integer")))
        };
        let p = &mut self.params;
        match (section, key) {
            ("", "preset") => {
                self.preset = Preset::parse(value)?;
                // Re-resolve defaults for the new preset, keeping nothing
                // from the old one: preset selection comes first in a file.
                let mut fresh = RunConfig::for_preset(self.preset);
                fresh.out_dir = self.out_dir.clone();
                *self = fresh;
            }
            ("", "method") => {
                self.method = Method::parse(value)
                    .map_err(|e| ConfigError::new(e.to_string()))?;
            }
            ("", "modes") => self.modes = int()?,
            ("", "plots") => {
                self.plots = value
                    .parse::<bool>()
                    .map_err(|_| ConfigError::new(format!("'{value}' is not true/false")))?;
            }
            ("material", "e") => {
                p.beam_e = num()?;
                p.plate_e = p.beam_e;
            }
            ("material", "nu") => {
                p.beam_nu = num()?;
                p.plate_nu = p.beam_nu;
            }
            ("material", "rho") => {
                p.beam_rho = num()?;
                p.plate_rho = p.beam_rho;
            }
            ("material", "beam_e") => p.beam_e = num()?,
            ("material", "beam_nu") => p.beam_nu = num()?,
            ("material", "beam_rho") => p.beam_rho = num()?,
            ("material", "plate_e") => p.plate_e = num()?,
            ("material", "plate_nu") => p.plate_nu = num()?,
            ("material", "plate_rho") => p.plate_rho = num()?,
            ("beam", "length") => p.beam_length = num()?,
            ("beam", "width") => p.beam_width = num()?,
            ("beam", "thickness") => p.beam_thickness = num()?,
            ("beam", "torsion") => {
                p.torsion_model = match value {
                    "saint_venant" => TorsionModel::SaintVenant,
                    "thin_strip" => TorsionModel::ThinStrip,
                    other => {
                        return Err(ConfigError::new(format!(
                            "unknown torsion model '{other}' (saint_venant or thin_strip)"
                        )))
                    }
                };
            }
            ("plate", "a") => p.plate_a = num()?,
            ("plate", "b") => p.plate_b = num()?,
            ("plate", "h") => p.plate_h = num()?,
            ("plate", "tip_rho") => p.tip_rho = num()?,
            ("plate", "tip_a") => p.tip_a = num()?,
            ("plate", "tip_b") => p.tip_b = num()?,
            ("plate", "tip_h") => p.tip_h = num()?,
            ("solver", "s") => self.sizes.s = int()?,
            ("solver", "n") => self.sizes.n = int()?,
            ("solver", "m") => self.sizes.m = int()?,
            ("solver", "delta") => self.delta = num()?,
            (sec, key) => {
                let place = if sec.is_empty() {
                    "top level".to_string()
                } else {
                    format!("section [{sec}]")
                };
                return Err(ConfigError::new(format!("unknown key '{key}' in {place}")));
            }
        }
        Ok(())
    }

    /// Parse a `--grid` specifier: `SxNxM`, `NxM`, or `S` depending on
    /// which fields the preset uses.
    pub fn apply_grid_spec(&mut self, spec: &str) -> Result<(), ConfigError> {
        let parts: Vec<usize> = spec
            .split('x')
            .map(|s| {
                s.trim()
                    .parse::<usize>()
                    .map_err(|_| ConfigError::new(format!("bad grid component '{s}' in '{spec}'")))
            })
            .collect::<Result<_, _>>()?;
        let kind = self.preset.kind();
        match (parts.as_slice(), kind.uses_beam(), kind.uses_plate()) {
            ([s], true, false) => self.sizes.s = *s,
            ([n, m], false, true) => {
                self.sizes.n = *n;
                self.sizes.m = *m;
            }
            ([s, n, m], true, true) => {
                self.sizes.s = *s;
                self.sizes.n = *n;
                self.sizes.m = *m;
            }
            ([k], true, true) | ([k], false, true) => {
                // A single size fans out to every axis.
                self.sizes = GridSizes::square(*k);
            }
            _ => {
                return Err(ConfigError::new(format!(
                    "grid spec '{spec}' does not fit preset {}",
                    self.preset.name()
                )))
            }
        }
        Ok(())
    }
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(pos) => &line[..pos],
        None => line,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn preset_line_materializes_defaults() {
        let mut cfg = RunConfig::for_preset(Preset::Case(CaseKind::Case1Beam));
        cfg.apply_file("preset = case2_ffff\n").unwrap();
        assert_eq!(cfg.preset, Preset::Case(CaseKind::Case2Ffff));
        assert_eq!(cfg.method, Method::Mgdq);
        assert_eq!(cfg.sizes, GridSizes::square(15));
        assert_eq!(cfg.params, ModelParams::default());
        cfg.validate().unwrap();
    }

    #[test]
    fn unknown_keys_are_hard_errors_with_line_numbers() {
        let mut cfg = RunConfig::for_preset(Preset::Case(CaseKind::Case2Ffff));
        let err = cfg.apply_file("preset = case2_ffff\nwibble = 3\n").unwrap_err();
        assert_eq!(err.line, Some(2));
        assert!(err.message.contains("wibble"));

        let err = cfg
            .apply_file("[plate]\nthickness = 0.01\n")
            .unwrap_err();
        assert_eq!(err.line, Some(2));
    }

    #[test]
    fn delta_out_of_range_is_rejected() {
        let mut cfg = RunConfig::for_preset(Preset::Case(CaseKind::Case2Ffff));
        cfg.apply_file("[solver]\ndelta = 0.5\n").unwrap();
        let err = cfg.validate().unwrap_err();
        assert!(err.message.contains("delta"));
    }

    #[test]
    fn material_override_propagates_to_rigidity() {
        let mut cfg = RunConfig::for_preset(Preset::Case(CaseKind::Case2Ffff));
        cfg.apply_file("[material]\nnu = 0.25\n").unwrap();
        assert_eq!(cfg.params.plate_nu, 0.25);
        let problem = gdqvib_core::build_problem(&cfg.preset_config()).unwrap();
        let plate = problem.plate.as_ref().unwrap();
        let expected = gdqvib_core::flexural_rigidity(200e9, 0.005, 0.25).unwrap();
        assert!((plate.section.d_rigidity - expected).abs() < 1e-9 * expected);
    }

    #[test]
    fn comments_and_blank_lines_are_ignored() {
        let mut cfg = RunConfig::for_preset(Preset::Case(CaseKind::Case2Ffff));
        cfg.apply_file("# a comment\n\n[solver]\nn = 11  # inline\nm = 11\n")
            .unwrap();
        assert_eq!(cfg.sizes.n, 11);
        assert_eq!(cfg.sizes.m, 11);
    }

    #[test]
    fn grid_specs_per_preset_shape() {
        let mut cfg = RunConfig::for_preset(Preset::Case(CaseKind::Case4Coupled));
        cfg.apply_grid_spec("15x13x11").unwrap();
        assert_eq!(cfg.sizes, GridSizes { s: 15, n: 13, m: 11 });

        let mut cfg = RunConfig::for_preset(Preset::Case(CaseKind::Case2Ffff));
        cfg.apply_grid_spec("15x15").unwrap();
        assert_eq!(cfg.sizes.n, 15);
        assert!(cfg.apply_grid_spec("15x15x15").is_err());

        let mut cfg = RunConfig::for_preset(Preset::Case(CaseKind::Case1Beam));
        cfg.apply_grid_spec("21").unwrap();
        assert_eq!(cfg.sizes.s, 21);
    }

    #[test]
    fn custom_preset_maps_to_coupled_topology() {
        let cfg = RunConfig::for_preset(Preset::Custom);
        assert_eq!(cfg.preset.kind(), CaseKind::Case4Coupled);
        assert_eq!(cfg.preset.name(), "custom");
    }
}
