use gauss_quad::GaussLegendre;

use crate::dq::grid::Grid1D;

/// Integrals of the Lagrange cardinal functions of `grid` over `[lo, hi]`.
///
/// The returned weights `q` turn nodal samples into an integral of the
/// grid's polynomial interpolant: `sum_j q_j f(x_j) = int_lo^hi p(x) dx`,
/// exact for polynomials up to degree n-1. Moment order `p` multiplies the
/// integrand by `(x - about)^p`, which is what the junction torque balance
/// needs for the first moment of edge tractions.
pub fn cardinal_integrals(grid: &Grid1D, lo: f64, hi: f64, moment: u32, about: f64) -> Vec<f64> {
    let x = grid.points();
    let n = x.len();
    // Integrand degree is (n - 1) + moment; Gauss-Legendre with k nodes is
    // exact through degree 2k - 1.
    let degree = (n + moment as usize) / 2 + 1;
    let rule = GaussLegendre::new(degree.max(2)).expect("valid Gauss-Legendre degree");

    let p: Vec<f64> = (0..n)
        .map(|i| {
            (0..n)
                .filter(|&k| k != i)
                .map(|k| x[i] - x[k])
                .product::<f64>()
        })
        .collect();

    (0..n)
        .map(|j| {
            rule.integrate(lo, hi, |t| {
                let mut num = 1.0;
                for (k, &xk) in x.iter().enumerate() {
                    if k != j {
                        num *= t - xk;
                    }
                }
                (t - about).powi(moment as i32) * num / p[j]
            })
        })
        .collect()
}

/// Full-interval quadrature weights for `grid` (cardinal integrals over the
/// whole axis), used for energy norms of sampled fields.
pub fn full_weights(grid: &Grid1D) -> Vec<f64> {
    cardinal_integrals(grid, 0.0, grid.length(), 0, 0.0)
}
