//! Mode-shape rendering: a PNG contour of the plate deflection with the
//! beam drawn as a strip of parallel rows offset by the local rotation,
//! mirroring how the discretization sketches usually draw the member.

use std::path::Path;

use gdqvib_core::{Mode, Problem};
use image::{ImageBuffer, Rgb};

const PLOT_W: u32 = 560;
const PLOT_H: u32 = 420;
const BEAM_ROWS: usize = 5;

/// Diverging blue-white-red map for values in [-1, 1].
fn colormap(v: f64) -> Rgb<u8> {
    let v = v.clamp(-1.0, 1.0);
    let (r, g, b) = if v >= 0.0 {
        (255.0, 255.0 * (1.0 - v), 255.0 * (1.0 - v))
    } else {
        (255.0 * (1.0 + v), 255.0 * (1.0 + v), 255.0)
    };
    Rgb([r as u8, g as u8, b as u8])
}

/// Bilinear sample of a nodal field at fractional grid coordinates.
fn sample(field: &ndarray::Array2<f64>, xs: &[f64], ys: &[f64], x: f64, y: f64) -> f64 {
    let locate = |grid: &[f64], v: f64| -> (usize, f64) {
        let mut k = 0;
        while k + 2 < grid.len() && grid[k + 1] < v {
            k += 1;
        }
        let t = ((v - grid[k]) / (grid[k + 1] - grid[k])).clamp(0.0, 1.0);
        (k, t)
    };
    let (i, tx) = locate(xs, x);
    let (j, ty) = locate(ys, y);
    let f00 = field[(i, j)];
    let f10 = field[(i + 1, j)];
    let f01 = field[(i, j + 1)];
    let f11 = field[(i + 1, j + 1)];
    f00 * (1.0 - tx) * (1.0 - ty) + f10 * tx * (1.0 - ty) + f01 * (1.0 - tx) * ty + f11 * tx * ty
}

/// Render one mode to a PNG file. The plate occupies the right part of the
/// canvas; when a beam is present it is drawn to the left as BEAM_ROWS
/// parallel traces deflected by `U + Theta * row offset`.
pub fn render_mode(problem: &Problem, mode: &Mode, path: &Path) -> Result<(), String> {
    let mut img = ImageBuffer::from_pixel(PLOT_W, PLOT_H, Rgb([255u8, 255, 255]));

    let (beam_px, plate_px) = if problem.beam.is_some() && problem.plate.is_some() {
        (PLOT_W / 3, PLOT_W - PLOT_W / 3)
    } else if problem.plate.is_some() {
        (0, PLOT_W)
    } else {
        (PLOT_W, 0)
    };

    if let (Some(plate), Some(w)) = (&problem.plate, &mode.field.plate) {
        let xs = plate.grid_x.points();
        let ys = plate.grid_y.points();
        let a = plate.grid_x.length();
        let b = plate.grid_y.length();
        for px in 0..plate_px {
            for py in 0..PLOT_H {
                let x = a * f64::from(px) / f64::from(plate_px.max(1) - 1);
                let y = b * f64::from(py) / f64::from(PLOT_H - 1);
                let v = sample(w, xs, ys, x, y);
                img.put_pixel(beam_px + px, PLOT_H - 1 - py, colormap(v));
            }
        }
    }

    if let (Some(beam), Some(u)) = (&problem.beam, &mode.field.beam_u) {
        let xs = beam.grid.points();
        let length = beam.grid.length();
        let zero = Rgb([40u8, 40, 40]);
        let theta = mode.field.beam_theta.as_ref();
        let half_width = beam.section.width / 2.0;
        for row in 0..BEAM_ROWS {
            let offset = if BEAM_ROWS > 1 {
                -half_width + beam.section.width * row as f64 / (BEAM_ROWS - 1) as f64
            } else {
                0.0
            };
            for px in 0..beam_px.max(1) {
                let x = length * f64::from(px) / f64::from(beam_px.max(2) - 1);
                // Nearest-segment linear interpolation of U and Theta.
                let mut k = 0;
                while k + 2 < xs.len() && xs[k + 1] < x {
                    k += 1;
                }
                let t = ((x - xs[k]) / (xs[k + 1] - xs[k])).clamp(0.0, 1.0);
                let uv = u[k] * (1.0 - t) + u[k + 1] * t;
                let tv = theta.map_or(0.0, |th| th[k] * (1.0 - t) + th[k + 1] * t);
                let deflection = uv + tv * offset;
                let mid = f64::from(PLOT_H) / 2.0;
                let py = (mid - deflection * mid * 0.8)
                    .clamp(0.0, f64::from(PLOT_H - 1)) as u32;
                img.put_pixel(px, py, zero);
            }
        }
    }

    img.save(path).map_err(|e| format!("writing {}: {e}", path.display()))
}
