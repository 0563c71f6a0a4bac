use ndarray::{Array1, Array2};

use crate::dq::grid::Grid1D;
use crate::error::{Error, Result};

/// Dense differentiation matrices of orders 1..=4 for one collocation grid.
///
/// Built once per grid and cached; entries are the GDQ weighting
/// coefficients, so `order(m).dot(&values)` approximates the m-th
/// derivative of the sampled function at every node.
#[derive(Debug, Clone)]
pub struct DiffMatrixSet {
    n: usize,
    matrices: [Array2<f64>; 4],
}

impl DiffMatrixSet {
    /// Build all four derivative orders for `grid`.
    pub fn build(grid: &Grid1D) -> Self {
        let d1 = weights_first_order(grid);
        let d2 = weights_higher_order(grid, &d1, 2).expect("order 2 in range");
        let d3 = weights_higher_order(grid, &d2, 3).expect("order 3 in range");
        let d4 = weights_higher_order(grid, &d3, 4).expect("order 4 in range");
        Self {
            n: grid.len(),
            matrices: [d1, d2, d3, d4],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Differentiation matrix for derivative order `m` in 1..=4.
    pub fn order(&self, m: usize) -> &Array2<f64> {
        assert!((1..=4).contains(&m), "derivative order {m} outside 1..=4");
        &self.matrices[m - 1]
    }
}

/// First-order GDQ weighting coefficients from the Lagrange product form:
/// off-diagonal `c_ij = P(x_i) / ((x_i - x_j) P(x_j))` with
/// `P(x_i) = prod_{k != i} (x_i - x_k)`, diagonal as negative row sum so
/// constants differentiate to zero.
pub fn weights_first_order(grid: &Grid1D) -> Array2<f64> {
    let x = grid.points();
    let n = x.len();

    let p: Vec<f64> = (0..n)
        .map(|i| {
            (0..n)
                .filter(|&k| k != i)
                .map(|k| x[i] - x[k])
                .product::<f64>()
        })
        .collect();

    let mut c = Array2::<f64>::zeros((n, n));
    for i in 0..n {
        let mut diag = 0.0;
        for j in 0..n {
            if i == j {
                continue;
            }
            let cij = p[i] / ((x[i] - x[j]) * p[j]);
            c[(i, j)] = cij;
            diag -= cij;
        }
        c[(i, i)] = diag;
    }
    c
}

/// Order-m weighting coefficients from the order-(m-1) set via the GDQ
/// recursion: `w(m)_ij = m * (w(m-1)_ii * w(1)_ij - w(m-1)_ij / (x_i - x_j))`
/// off the diagonal, negative row sum on it.
///
/// `prev` must hold the order-(m-1) coefficients for the same grid; `m` is
/// restricted to 2..=4.
pub fn weights_higher_order(grid: &Grid1D, prev: &Array2<f64>, m: usize) -> Result<Array2<f64>> {
    if !(2..=4).contains(&m) {
        return Err(Error::InvalidParameter(format!(
            "derivative order must be in 2..=4, got {m}"
        )));
    }
    let x = grid.points();
    let n = x.len();
    if prev.nrows() != n || prev.ncols() != n {
        return Err(Error::DimensionMismatch(format!(
            "previous-order matrix is {}x{}, grid has {} points",
            prev.nrows(),
            prev.ncols(),
            n
        )));
    }
    let first = weights_first_order(grid);
    let mf = m as f64;
    let mut w = Array2::<f64>::zeros((n, n));
    for i in 0..n {
        let mut diag = 0.0;
        for j in 0..n {
            if i == j {
                continue;
            }
            let wij = mf * (prev[(i, i)] * first[(i, j)] - prev[(i, j)] / (x[i] - x[j]));
            w[(i, j)] = wij;
            diag -= wij;
        }
        w[(i, i)] = diag;
    }
    Ok(w)
}

/// Apply a differentiation matrix to sampled values.
pub fn apply_derivative(matrix: &Array2<f64>, values: &Array1<f64>) -> Result<Array1<f64>> {
    if matrix.ncols() != values.len() || matrix.nrows() != values.len() {
        return Err(Error::DimensionMismatch(format!(
            "matrix is {}x{}, vector has length {}",
            matrix.nrows(),
            matrix.ncols(),
            values.len()
        )));
    }
    Ok(matrix.dot(values))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dq::grid::{chebyshev_grid, Grid1D, GridKind};
    use approx::assert_abs_diff_eq;
    use ndarray::array;

    #[test]
    fn first_order_on_three_points() {
        // Differentiating the quadratic Lagrange basis on {0, 1/2, 1} gives
        // [[-3, 4, -1], [-1, 0, 1], [1, -4, 3]].
        let grid = Grid1D::new(vec![0.0, 0.5, 1.0], 1.0, GridKind::Chebyshev);
        // Grid1D rejects 3 points, so build the matrix from raw math.
        assert!(grid.is_err());
        let x = [0.0, 0.5, 1.0];
        let p: Vec<f64> = (0..3)
            .map(|i| {
                (0..3)
                    .filter(|&k| k != i)
                    .map(|k| x[i] - x[k])
                    .product::<f64>()
            })
            .collect();
        let mut c = [[0.0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    c[i][j] = p[i] / ((x[i] - x[j]) * p[j]);
                }
            }
            c[i][i] = -(0..3).filter(|&j| j != i).map(|j| c[i][j]).sum::<f64>();
        }
        let expected = [[-3.0, 4.0, -1.0], [-1.0, 0.0, 1.0], [1.0, -4.0, 3.0]];
        for i in 0..3 {
            for j in 0..3 {
                assert_abs_diff_eq!(c[i][j], expected[i][j], epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn rows_annihilate_constants() {
        let grid = chebyshev_grid(11, 2.0).unwrap();
        let set = DiffMatrixSet::build(&grid);
        let ones = Array1::from_elem(11, 1.0);
        for m in 1..=4 {
            let d = apply_derivative(set.order(m), &ones).unwrap();
            let scale = set
                .order(m)
                .iter()
                .fold(0.0_f64, |acc, v| acc.max(v.abs()));
            for v in d.iter() {
                assert!(v.abs() <= 1e-9 * scale, "order {m}: residual {v}");
            }
        }
    }

    #[test]
    fn derivative_of_coordinates_is_one() {
        let grid = chebyshev_grid(9, 1.5).unwrap();
        let set = DiffMatrixSet::build(&grid);
        let x = Array1::from_vec(grid.points().to_vec());
        let d = apply_derivative(set.order(1), &x).unwrap();
        for v in d.iter() {
            assert_abs_diff_eq!(*v, 1.0, epsilon = 1e-10);
        }
    }

    #[test]
    fn second_derivative_of_square_is_two() {
        let grid = chebyshev_grid(9, 1.0).unwrap();
        let set = DiffMatrixSet::build(&grid);
        let x2 = Array1::from_iter(grid.points().iter().map(|x| x * x));
        let d = apply_derivative(set.order(2), &x2).unwrap();
        for v in d.iter() {
            assert_abs_diff_eq!(*v, 2.0, epsilon = 1e-9);
        }
    }

    #[test]
    fn fourth_derivative_of_cubic_vanishes() {
        let grid = chebyshev_grid(9, 1.0).unwrap();
        let set = DiffMatrixSet::build(&grid);
        let x3 = Array1::from_iter(grid.points().iter().map(|x| x.powi(3)));
        let d = apply_derivative(set.order(4), &x3).unwrap();
        let scale = set
            .order(4)
            .iter()
            .fold(0.0_f64, |acc, v| acc.max(v.abs()));
        for v in d.iter() {
            assert!(v.abs() < 1e-7 * scale);
        }
    }

    #[test]
    fn first_derivative_of_x7_on_15_points() {
        let grid = chebyshev_grid(15, 1.0).unwrap();
        let set = DiffMatrixSet::build(&grid);
        let f = Array1::from_iter(grid.points().iter().map(|x| x.powi(7)));
        let d = apply_derivative(set.order(1), &f).unwrap();
        for (x, v) in grid.points().iter().zip(d.iter()) {
            assert_abs_diff_eq!(*v, 7.0 * x.powi(6), epsilon = 1e-8);
        }
    }

    #[test]
    fn exp_derivative_interior_accuracy() {
        let grid = chebyshev_grid(15, 1.0).unwrap();
        let set = DiffMatrixSet::build(&grid);
        let f = Array1::from_iter(grid.points().iter().map(|x| x.exp()));
        let d = apply_derivative(set.order(1), &f).unwrap();
        for k in 1..14 {
            let exact = grid.points()[k].exp();
            assert!(((d[k] - exact) / exact).abs() < 1e-9);
        }
    }

    #[test]
    fn fourth_derivative_of_sine_on_15_points() {
        use std::f64::consts::PI;
        let grid = chebyshev_grid(15, 1.0).unwrap();
        let set = DiffMatrixSet::build(&grid);
        let f = Array1::from_iter(grid.points().iter().map(|x| (PI * x).sin()));
        let d = apply_derivative(set.order(4), &f).unwrap();
        for k in 1..14 {
            let exact = PI.powi(4) * (PI * grid.points()[k]).sin();
            if exact.abs() > 1e-6 {
                assert!(
                    ((d[k] - exact) / exact).abs() < 1e-6,
                    "node {k}: {} vs {exact}",
                    d[k]
                );
            }
        }
    }

    #[test]
    fn second_order_on_three_points_is_constant_block() {
        // On {0, 1/2, 1} the second-derivative matrix is the square of the
        // first-derivative matrix: every row [4, -8, 4].
        let d1 = array![[-3.0, 4.0, -1.0], [-1.0, 0.0, 1.0], [1.0, -4.0, 3.0]];
        let d2 = d1.dot(&d1);
        for i in 0..3 {
            assert_abs_diff_eq!(d2[(i, 0)], 4.0, epsilon = 1e-12);
            assert_abs_diff_eq!(d2[(i, 1)], -8.0, epsilon = 1e-12);
            assert_abs_diff_eq!(d2[(i, 2)], 4.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn higher_order_rejects_bad_order() {
        let grid = chebyshev_grid(9, 1.0).unwrap();
        let d1 = weights_first_order(&grid);
        assert!(weights_higher_order(&grid, &d1, 1).is_err());
        assert!(weights_higher_order(&grid, &d1, 5).is_err());
    }

    #[test]
    fn apply_derivative_rejects_mismatch() {
        let grid = chebyshev_grid(9, 1.0).unwrap();
        let set = DiffMatrixSet::build(&grid);
        let short = Array1::zeros(5);
        assert!(apply_derivative(set.order(1), &short).is_err());
    }

}
