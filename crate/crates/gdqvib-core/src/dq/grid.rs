use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Relative gap below which two collocation points are considered coincident.
const MIN_RELATIVE_GAP: f64 = 1e-10;

/// Relative tolerance on the endpoint positions.
const ENDPOINT_TOL: f64 = 1e-12;

/// How a 1D collocation grid was generated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GridKind {
    /// Chebyshev-Gauss-Lobatto points (cosine-clustered, endpoints included).
    Chebyshev,
    /// CGL interior points with near-boundary points moved to a small
    /// relative offset delta from each end.
    DeltaModified,
}

/// Ordered collocation points along one axis, with the axis extent.
///
/// Invariants enforced at construction: points strictly increasing, first
/// point 0, last point `length`, pairwise gaps above `1e-10 * length`, and
/// at least five points (fourth-order operators need five abscissae).
#[derive(Debug, Clone)]
pub struct Grid1D {
    points: Vec<f64>,
    length: f64,
    kind: GridKind,
    delta_lo: bool,
    delta_hi: bool,
}

impl Grid1D {
    /// Validate and wrap an externally built point set.
    pub fn new(points: Vec<f64>, length: f64, kind: GridKind) -> Result<Self> {
        let delta = kind == GridKind::DeltaModified;
        Self::with_delta_ends(points, length, kind, delta, delta)
    }

    fn with_delta_ends(
        points: Vec<f64>,
        length: f64,
        kind: GridKind,
        delta_lo: bool,
        delta_hi: bool,
    ) -> Result<Self> {
        if length <= 0.0 || !length.is_finite() {
            return Err(Error::InvalidGrid(format!(
                "axis extent must be positive and finite, got {length}"
            )));
        }
        if points.len() < 5 {
            return Err(Error::InvalidGrid(format!(
                "need at least 5 points for fourth-order operators, got {}",
                points.len()
            )));
        }
        if points[0].abs() > ENDPOINT_TOL * length {
            return Err(Error::InvalidGrid(format!(
                "first point must be 0, got {}",
                points[0]
            )));
        }
        let last = *points.last().unwrap();
        if (last - length).abs() > ENDPOINT_TOL * length {
            return Err(Error::InvalidGrid(format!(
                "last point must equal the axis extent {length}, got {last}"
            )));
        }
        for pair in points.windows(2) {
            if pair[1] - pair[0] <= MIN_RELATIVE_GAP * length {
                return Err(Error::InvalidGrid(format!(
                    "points must be strictly increasing with gap > {:e}, got {} then {}",
                    MIN_RELATIVE_GAP * length,
                    pair[0],
                    pair[1]
                )));
            }
        }
        Ok(Self {
            points,
            length,
            kind,
            delta_lo,
            delta_hi,
        })
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    /// True when a delta point sits next to the lower end.
    pub fn has_delta_lo(&self) -> bool {
        self.delta_lo
    }

    /// True when a delta point sits next to the upper end.
    pub fn has_delta_hi(&self) -> bool {
        self.delta_hi
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn kind(&self) -> GridKind {
        self.kind
    }
}

/// Raw Chebyshev-Gauss-Lobatto abscissae on `[0, length]`:
/// `x_k = (length / 2) * (1 - cos((k - 1) pi / (n - 1)))`, `k = 1..n`.
///
/// Exposed separately so the formula itself can be unit-tested below the
/// five-point floor that `Grid1D` enforces.
pub fn chebyshev_points(n: usize, length: f64) -> Vec<f64> {
    let m = (n - 1) as f64;
    (0..n)
        .map(|k| 0.5 * length * (1.0 - (k as f64 * PI / m).cos()))
        .collect()
}

/// Chebyshev-Gauss-Lobatto collocation grid on `[0, length]`.
pub fn chebyshev_grid(n: usize, length: f64) -> Result<Grid1D> {
    if n < 5 {
        return Err(Error::InvalidGrid(format!(
            "chebyshev grid needs n >= 5, got {n}"
        )));
    }
    if length <= 0.0 {
        return Err(Error::InvalidGrid(format!(
            "chebyshev grid needs length > 0, got {length}"
        )));
    }
    let mut points = chebyshev_points(n, length);
    // The cosine form is symmetric in exact arithmetic; pin the endpoints
    // and midpoint so the invariant checks never see rounding fuzz.
    points[0] = 0.0;
    points[n - 1] = length;
    if n % 2 == 1 {
        points[n / 2] = 0.5 * length;
    }
    Grid1D::new(points, length, GridKind::Chebyshev)
}

/// Delta-point grid: endpoints, near-boundary points at `delta * length` and
/// `(1 - delta) * length`, and the interior of an (n-2)-point CGL grid in
/// between. Two distinct collocation points next to each boundary give the
/// two boundary-condition rows per free edge their own carriers.
pub fn delta_modified_grid(n: usize, length: f64, delta: f64) -> Result<Grid1D> {
    delta_modified_grid_ends(n, length, delta, true, true)
}

/// Delta-point grid with the near-boundary offset applied only at the
/// selected ends. A clamped end keeps the plain Chebyshev clustering (its
/// essential conditions need no extra carrier and a delta point there
/// degrades the fourth-order operator); a free end gets the delta point.
pub fn delta_modified_grid_ends(
    n: usize,
    length: f64,
    delta: f64,
    lo: bool,
    hi: bool,
) -> Result<Grid1D> {
    if n < 7 {
        return Err(Error::InvalidGrid(format!(
            "delta-modified grid needs n >= 7, got {n}"
        )));
    }
    if length <= 0.0 {
        return Err(Error::InvalidGrid(format!(
            "delta-modified grid needs length > 0, got {length}"
        )));
    }
    if delta <= 0.0 {
        return Err(Error::InvalidGrid(format!(
            "delta must be positive, got {delta}"
        )));
    }
    if !lo && !hi {
        return chebyshev_grid(n, length);
    }
    // The underlying CGL set keeps the total count at n after inserting
    // one delta point per selected end.
    let n_delta = usize::from(lo) + usize::from(hi);
    let inner = chebyshev_points(n - n_delta, length);
    let first_inner = inner[1];
    let last_inner = inner[n - n_delta - 2];
    if lo && delta * length >= first_inner {
        return Err(Error::InvalidGrid(format!(
            "delta {delta} collides with the neighboring Chebyshev point at \
             relative {}",
            first_inner / length
        )));
    }
    if hi && (1.0 - delta) * length <= last_inner {
        return Err(Error::InvalidGrid(format!(
            "delta {delta} collides with the neighboring Chebyshev point at \
             relative {}",
            last_inner / length
        )));
    }
    let mut points = Vec::with_capacity(n);
    points.push(0.0);
    if lo {
        points.push(delta * length);
    }
    points.extend_from_slice(&inner[1..=n - n_delta - 2]);
    if hi {
        points.push((1.0 - delta) * length);
    }
    points.push(length);
    debug_assert_eq!(points.len(), n);
    Grid1D::with_delta_ends(points, length, GridKind::DeltaModified, lo, hi)
}
