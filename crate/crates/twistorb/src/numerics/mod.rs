//! Shared numerical kernels: quadrature rules, matrix functions,
//! reproducible reductions and analytic square-root tracking.

pub mod matfun;
pub mod quad;
pub mod sqrt_track;

use num_complex::Complex64;

/// Pairwise summation over a fixed partition of `values`.
///
/// The tree shape depends only on the length, never on the thread count, so
/// repeated runs produce bitwise-identical sums.
pub fn pairwise_sum(values: &[Complex64]) -> Complex64 {
    match values.len() {
        0 => Complex64::new(0.0, 0.0),
        1 => values[0],
        2 => values[0] + values[1],
        n => {
            let mid = n / 2;
            pairwise_sum(&values[..mid]) + pairwise_sum(&values[mid..])
        }
    }
}

/// Real pairwise summation with the same fixed tree shape.
pub fn pairwise_sum_real(values: &[f64]) -> f64 {
    match values.len() {
        0 => 0.0,
        1 => values[0],
        2 => values[0] + values[1],
        n => {
            let mid = n / 2;
            pairwise_sum_real(&values[..mid]) + pairwise_sum_real(&values[mid..])
        }
    }
}

/// Least-squares slope of y against x.
pub fn fit_slope(x: &[f64], y: &[f64]) -> f64 {
    assert_eq!(x.len(), y.len());
    let n = x.len() as f64;
    let sx: f64 = x.iter().sum();
    let sy: f64 = y.iter().sum();
    let sxx: f64 = x.iter().map(|v| v * v).sum();
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| a * b).sum();
    (n * sxy - sx * sy) / (n * sxx - sx * sx)
}
