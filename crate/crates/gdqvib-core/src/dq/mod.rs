//! Collocation grids and GDQ weighting-coefficient matrices.
//!
//! Derivatives at a grid node are approximated as weighted sums of the
//! function values at all nodes along that axis. The weights come from the
//! Lagrange product form for the first derivative and a recursion for
//! orders two through four; both routes are cross-checked in the tests.

mod grid;
mod quadrature;
mod weights;

pub use grid::{
    chebyshev_grid, chebyshev_points, delta_modified_grid, delta_modified_grid_ends, Grid1D,
    GridKind,
};
pub use quadrature::{cardinal_integrals, full_weights};
pub use weights::{apply_derivative, weights_first_order, weights_higher_order, DiffMatrixSet};
