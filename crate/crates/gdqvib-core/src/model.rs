//! Geometry, material and section properties, nondimensional frequency
//! groups, and plate stress-resultant evaluation.

use ndarray::Array2;

use crate::dq::DiffMatrixSet;
use crate::error::{Error, Result};

/// Isotropic elastic material.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Material {
    /// Young's modulus (Pa).
    pub e: f64,
    /// Poisson ratio.
    pub nu: f64,
    /// Density (kg/m^3).
    pub rho: f64,
    /// Shear modulus (Pa).
    pub g: f64,
}

impl Material {
    /// Material with the shear modulus derived as `E / (2 (1 + nu))`.
    pub fn new(e: f64, nu: f64, rho: f64) -> Result<Self> {
        if e <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "Young's modulus must be positive, got {e}"
            )));
        }
        if !(0.0..0.5).contains(&nu) {
            return Err(Error::InvalidParameter(format!(
                "Poisson ratio must lie in [0, 0.5), got {nu}"
            )));
        }
        if rho <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "density must be positive, got {rho}"
            )));
        }
        Ok(Self {
            e,
            nu,
            rho,
            g: e / (2.0 * (1.0 + nu)),
        })
    }
}

/// Model for the Saint-Venant torsion constant of the rectangular section.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TorsionModel {
    /// Single-term Saint-Venant approximation for t <= d.
    #[default]
    SaintVenant,
    /// Thin-strip limit `d t^3 / 3`.
    ThinStrip,
}

/// Rectangular beam cross-section of width `d` and thickness `t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BeamSection {
    /// Beam length (m).
    pub length: f64,
    /// Section width (m), in the plate's y direction.
    pub width: f64,
    /// Section thickness (m), out of the plate plane.
    pub thickness: f64,
    /// Cross-section area (m^2).
    pub area: f64,
    /// Second moment for bending out of the plate plane (m^4).
    pub bending_i: f64,
    /// Saint-Venant torsion constant (m^4).
    pub torsion_j: f64,
    /// Polar second moment of area (m^4).
    pub polar_ip: f64,
}

impl BeamSection {
    pub fn new(length: f64, width: f64, thickness: f64, torsion: TorsionModel) -> Result<Self> {
        for (name, v) in [("length", length), ("width", width), ("thickness", thickness)] {
            if v <= 0.0 {
                return Err(Error::InvalidParameter(format!(
                    "beam {name} must be positive, got {v}"
                )));
            }
        }
        let (d, t) = (width, thickness);
        let torsion_j = match torsion {
            TorsionModel::SaintVenant => {
                // Valid for t <= d; swap roles otherwise so the long side
                // carries the 1/3 term.
                let (long, short) = if t <= d { (d, t) } else { (t, d) };
                long * short.powi(3)
                    * (1.0 / 3.0
                        - 0.21 * (short / long) * (1.0 - short.powi(4) / (12.0 * long.powi(4))))
            }
            TorsionModel::ThinStrip => d * t.powi(3) / 3.0,
        };
        let polar_ip = (d * t.powi(3) + t * d.powi(3)) / 12.0;
        Ok(Self {
            length,
            width,
            thickness,
            area: t * d,
            bending_i: d * t.powi(3) / 12.0,
            torsion_j,
            polar_ip,
        })
    }
}

/// Flexural rigidity of a thin plate, `E h^3 / (12 (1 - nu^2))`.
pub fn flexural_rigidity(e: f64, h: f64, nu: f64) -> Result<f64> {
    if e <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "Young's modulus must be positive, got {e}"
        )));
    }
    if h <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "thickness must be positive, got {h}"
        )));
    }
    if !(0.0..0.5).contains(&nu) {
        return Err(Error::InvalidParameter(format!(
            "Poisson ratio must lie in [0, 0.5), got {nu}"
        )));
    }
    Ok(e * h.powi(3) / (12.0 * (1.0 - nu * nu)))
}

/// Rectangular thin plate `a x b x h`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlateSection {
    /// Plate length in x (m).
    pub a: f64,
    /// Plate width in y (m).
    pub b: f64,
    /// Thickness (m).
    pub h: f64,
    /// Flexural rigidity (N m).
    pub d_rigidity: f64,
    /// Aspect ratio a / b.
    pub beta: f64,
    /// True when h exceeds a tenth of the smaller planform dimension, i.e.
    /// outside the comfortable thin-plate range.
    pub thin_plate_warning: bool,
}

impl PlateSection {
    pub fn new(a: f64, b: f64, h: f64, material: &Material) -> Result<Self> {
        for (name, v) in [("a", a), ("b", b), ("h", h)] {
            if v <= 0.0 {
                return Err(Error::InvalidParameter(format!(
                    "plate {name} must be positive, got {v}"
                )));
            }
        }
        Ok(Self {
            a,
            b,
            h,
            d_rigidity: flexural_rigidity(material.e, h, material.nu)?,
            beta: a / b,
            thin_plate_warning: h > a.min(b) / 10.0,
        })
    }
}

/// Which nondimensional frequency definition a value belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FrequencyScale {
    /// Beam transverse bending, reported as the root `beta L`
    /// (so `omega_bar^2 = rho A L^4 omega^2 / (E I)` and the reported value
    /// is `omega_bar^(1/2)`).
    BeamBending,
    /// Beam torsion, `omega_bar = omega L sqrt(rho Ip / (G J))`.
    BeamTorsion,
    /// Plate, `omega_bar = omega a^2 sqrt(rho h / D)`.
    Plate,
}

/// Conversion factors between angular frequency and the nondimensional
/// groups of the three fields.
#[derive(Debug, Clone, Copy)]
pub struct NondimGroups {
    /// `omega = beam_bending * omega_bar` with `omega_bar^2 = rho A L^4 omega^2 / (E I)`.
    beam_bending: f64,
    /// `omega = beam_torsion * omega_bar` for torsion.
    beam_torsion: f64,
    /// `omega = plate * omega_bar` for the plate.
    plate: f64,
}

impl NondimGroups {
    pub fn new(
        beam_material: &Material,
        beam: &BeamSection,
        plate_material: &Material,
        plate: &PlateSection,
    ) -> Self {
        Self {
            beam_bending: (beam_material.e * beam.bending_i
                / (beam_material.rho * beam.area * beam.length.powi(4)))
            .sqrt(),
            beam_torsion: (beam_material.g * beam.torsion_j
                / (beam_material.rho * beam.polar_ip * beam.length.powi(2)))
            .sqrt(),
            plate: (plate.d_rigidity / (plate_material.rho * plate.h * plate.a.powi(4))).sqrt(),
        }
    }

    /// Groups for a beam-only configuration (torsion and bending scales).
    pub fn beam_only(material: &Material, beam: &BeamSection) -> Self {
        let plate_dummy = 1.0;
        Self {
            beam_bending: (material.e * beam.bending_i
                / (material.rho * beam.area * beam.length.powi(4)))
            .sqrt(),
            beam_torsion: (material.g * beam.torsion_j
                / (material.rho * beam.polar_ip * beam.length.powi(2)))
            .sqrt(),
            plate: plate_dummy,
        }
    }

    /// Groups for a plate-only configuration.
    pub fn plate_only(material: &Material, plate: &PlateSection) -> Self {
        Self {
            beam_bending: 1.0,
            beam_torsion: 1.0,
            plate: (plate.d_rigidity / (material.rho * plate.h * plate.a.powi(4))).sqrt(),
        }
    }

    fn factor(&self, scale: FrequencyScale) -> f64 {
        match scale {
            FrequencyScale::BeamBending => self.beam_bending,
            FrequencyScale::BeamTorsion => self.beam_torsion,
            FrequencyScale::Plate => self.plate,
        }
    }

    /// Angular frequency (rad/s) from a nondimensional value.
    ///
    /// Beam bending values are the `beta L` roots, so they enter squared.
    pub fn to_angular(&self, nondim: f64, scale: FrequencyScale) -> Result<f64> {
        if nondim < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "nondimensional frequency must be nonnegative, got {nondim}"
            )));
        }
        let omega_bar = match scale {
            FrequencyScale::BeamBending => nondim * nondim,
            _ => nondim,
        };
        Ok(omega_bar * self.factor(scale))
    }

    /// Frequency in Hz from a nondimensional value.
    pub fn to_hz(&self, nondim: f64, scale: FrequencyScale) -> Result<f64> {
        Ok(self.to_angular(nondim, scale)? / (2.0 * std::f64::consts::PI))
    }

    /// Nondimensional value from an angular frequency (rad/s).
    pub fn to_nondim(&self, omega: f64, scale: FrequencyScale) -> f64 {
        let omega_bar = omega / self.factor(scale);
        match scale {
            FrequencyScale::BeamBending => omega_bar.sqrt(),
            _ => omega_bar,
        }
    }

    /// Nondimensional value from the eigenvalue `omega^2`.
    pub fn nondim_from_omega_sq(&self, omega_sq: f64, scale: FrequencyScale) -> f64 {
        self.to_nondim(omega_sq.max(0.0).sqrt(), scale)
    }
}

/// Plate shear forces and moments evaluated on the full grid.
///
/// Row index follows x, column index follows y.
#[derive(Debug, Clone)]
pub struct StressResultants {
    pub v_x: Array2<f64>,
    pub v_y: Array2<f64>,
    pub m_x: Array2<f64>,
    pub m_y: Array2<f64>,
    pub m_xy: Array2<f64>,
}

/// Kelvin-Kirchhoff effective shears and bending/twisting moments of a
/// sampled plate deflection field:
/// `M_x = -D (w_xx + nu w_yy)`, `M_xy = -D (1 - nu) w_xy`,
/// `V_x = -D (w_xxx + (2 - nu) w_xyy)`, and symmetrically in y.
pub fn stress_resultants(
    mode: &Array2<f64>,
    plate: &PlateSection,
    nu: f64,
    dx: &DiffMatrixSet,
    dy: &DiffMatrixSet,
) -> Result<StressResultants> {
    let (n, m) = mode.dim();
    if dx.n() != n || dy.n() != m {
        return Err(Error::DimensionMismatch(format!(
            "mode is {n}x{m} but derivative sets are {}x{}",
            dx.n(),
            dy.n()
        )));
    }
    let d = plate.d_rigidity;

    // d^p/dx^p acts from the left, d^q/dy^q from the right (transposed).
    let wxx = dx.order(2).dot(mode);
    let wyy = mode.dot(&dy.order(2).t());
    let wxy = dx.order(1).dot(mode).dot(&dy.order(1).t());
    let wxxx = dx.order(3).dot(mode);
    let wyyy = mode.dot(&dy.order(3).t());
    let wxyy = dx.order(1).dot(mode).dot(&dy.order(2).t());
    let wxxy = dx.order(2).dot(mode).dot(&dy.order(1).t());

    Ok(StressResultants {
        v_x: (&wxxx + &(&wxyy * (2.0 - nu))) * (-d),
        v_y: (&wyyy + &(&wxxy * (2.0 - nu))) * (-d),
        m_x: (&wxx + &(&wyy * nu)) * (-d),
        m_y: (&wyy + &(&wxx * nu)) * (-d),
        m_xy: wxy * (-d * (1.0 - nu)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dq::chebyshev_grid;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    fn steel() -> Material {
        Material::new(200e9, 0.3, 2330.0).unwrap()
    }

    #[test]
    fn shear_modulus_derived() {
        let m = steel();
        assert_relative_eq!(m.g, 200e9 / 2.6, max_relative = 1e-12);
    }

    #[test]
    fn material_rejects_bad_inputs() {
        assert!(Material::new(-1.0, 0.3, 1.0).is_err());
        assert!(Material::new(1.0, 0.5, 1.0).is_err());
        assert!(Material::new(1.0, 0.3, 0.0).is_err());
    }

    #[test]
    fn flexural_rigidity_paper_default() {
        // E = 200 GPa, h = 0.5 cm, nu = 0.3.
        let d = flexural_rigidity(200e9, 0.005, 0.3).unwrap();
        assert_relative_eq!(d, 2289.37728937729, max_relative = 1e-10);
    }

    #[test]
    fn flexural_rigidity_zero_poisson() {
        let d = flexural_rigidity(100.0, 2.0, 0.0).unwrap();
        assert_relative_eq!(d, 100.0 * 8.0 / 12.0, max_relative = 1e-14);
    }

    #[test]
    fn flexural_rigidity_cubic_in_thickness() {
        let d1 = flexural_rigidity(200e9, 0.005, 0.3).unwrap();
        let d2 = flexural_rigidity(200e9, 0.010, 0.3).unwrap();
        assert_relative_eq!(d2 / d1, 8.0, max_relative = 1e-12);
    }

    #[test]
    fn beam_section_invariants() {
        let b = BeamSection::new(1.0, 0.1, 0.005, TorsionModel::SaintVenant).unwrap();
        assert_abs_diff_eq!(b.area, 5e-4, epsilon = 1e-18);
        assert_abs_diff_eq!(b.bending_i, 0.1 * 0.005f64.powi(3) / 12.0, epsilon = 1e-20);
        assert!(b.torsion_j <= b.polar_ip);
        assert!(b.torsion_j > 0.0);
        // Thin section: Saint-Venant approaches the thin-strip value from below.
        let thin = BeamSection::new(1.0, 0.1, 0.005, TorsionModel::ThinStrip).unwrap();
        assert!(b.torsion_j < thin.torsion_j);
        assert!(b.torsion_j > 0.8 * thin.torsion_j);
    }

    #[test]
    fn plate_thin_warning() {
        let m = steel();
        let thin = PlateSection::new(1.0, 1.0, 0.005, &m).unwrap();
        assert!(!thin.thin_plate_warning);
        let thick = PlateSection::new(1.0, 1.0, 0.2, &m).unwrap();
        assert!(thick.thin_plate_warning);
    }

    #[test]
    fn nondim_round_trip_is_identity() {
        let m = steel();
        let beam = BeamSection::new(1.0, 0.1, 0.005, TorsionModel::SaintVenant).unwrap();
        let plate = PlateSection::new(1.0, 1.0, 0.005, &m).unwrap();
        let g = NondimGroups::new(&m, &beam, &m, &plate);
        for scale in [
            FrequencyScale::BeamBending,
            FrequencyScale::BeamTorsion,
            FrequencyScale::Plate,
        ] {
            let nondim = 13.468;
            let omega = g.to_angular(nondim, scale).unwrap();
            assert_relative_eq!(g.to_nondim(omega, scale), nondim, max_relative = 1e-12);
        }
    }

    #[test]
    fn zero_maps_to_zero_hz() {
        let m = steel();
        let plate = PlateSection::new(1.0, 1.0, 0.005, &m).unwrap();
        let g = NondimGroups::plate_only(&m, &plate);
        assert_eq!(g.to_hz(0.0, FrequencyScale::Plate).unwrap(), 0.0);
        assert!(g.to_hz(-1.0, FrequencyScale::Plate).is_err());
    }

    #[test]
    fn plate_scale_consistency_figure() {
        // omega = omega_bar sqrt(D / (rho h a^4)) with the paper-default
        // plate gives 30.05 Hz for omega_bar = 13.468.
        let m = steel();
        let plate = PlateSection::new(1.0, 1.0, 0.005, &m).unwrap();
        let g = NondimGroups::plate_only(&m, &plate);
        let hz = g.to_hz(13.468, FrequencyScale::Plate).unwrap();
        let expect = 13.468 * (2289.37728937729_f64 / (2330.0 * 0.005)).sqrt()
            / (2.0 * std::f64::consts::PI);
        assert_relative_eq!(hz, expect, max_relative = 1e-12);
        assert_relative_eq!(hz, 30.047, max_relative = 1e-3);
    }

    #[test]
    fn resultants_vanish_on_rigid_motions() {
        let m = steel();
        let plate = PlateSection::new(1.0, 1.0, 0.005, &m).unwrap();
        let gx = chebyshev_grid(9, 1.0).unwrap();
        let gy = chebyshev_grid(9, 1.0).unwrap();
        let dx = DiffMatrixSet::build(&gx);
        let dy = DiffMatrixSet::build(&gy);

        // Translation and rotation about y both have zero curvature.
        for field in [
            Array2::from_elem((9, 9), 1.0),
            Array2::from_shape_fn((9, 9), |(i, _)| gx.points()[i]),
        ] {
            let r = stress_resultants(&field, &plate, m.nu, &dx, &dy).unwrap();
            for arr in [&r.v_x, &r.v_y, &r.m_x, &r.m_y, &r.m_xy] {
                let max = arr.iter().fold(0.0_f64, |acc, v| acc.max(v.abs()));
                assert!(max < 1e-5, "resultant should vanish, max {max}");
            }
        }
    }

    #[test]
    fn cylindrical_bending_moment_needs_poisson() {
        // w = x^2 has M_x = -2 D and M_y = -2 D nu; with nu = 0 the y moment
        // vanishes identically.
        let m = steel();
        let plate = PlateSection::new(1.0, 1.0, 0.005, &m).unwrap();
        let gx = chebyshev_grid(9, 1.0).unwrap();
        let gy = chebyshev_grid(9, 1.0).unwrap();
        let dx = DiffMatrixSet::build(&gx);
        let dy = DiffMatrixSet::build(&gy);
        let field = Array2::from_shape_fn((9, 9), |(i, _)| gx.points()[i].powi(2));
        let r = stress_resultants(&field, &plate, m.nu, &dx, &dy).unwrap();
        let d = plate.d_rigidity;
        for v in r.m_x.iter() {
            assert_relative_eq!(*v, -2.0 * d, max_relative = 1e-8);
        }
        for v in r.m_y.iter() {
            assert_relative_eq!(*v, -2.0 * d * m.nu, max_relative = 1e-8);
        }
    }
}
