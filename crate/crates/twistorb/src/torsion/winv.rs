//! The W-invariant W = -∫₀^∞ d_t dt/t of a nondegenerate orbit, by
//! log-grid trapezoid integration with a fitted O(√t) head and an
//! exponential tail.

use crate::error::{Error, Result};
use crate::numerics::fit_slope;
use crate::torsion::forms::{et_dt, SigmaA2Terms};
use crate::torsion::orbit::OrbitModel;

/// W-invariant data: grids, fits and the extracted maximum.
#[derive(Debug, Clone)]
pub struct WResult {
    pub t_grid: Vec<f64>,
    pub e_t: Vec<f64>,
    pub d_t: Vec<f64>,
    pub w_max: f64,
    /// Estimated integration error (grid-refinement difference + tails).
    pub w_error: f64,
    /// Fitted exponential decay (amplitude, rate) of d_t at large t.
    pub decay_fit: (f64, f64),
}

/// Compute W = -∫ d_t dt/t over a log grid [t_min, t_max].
pub fn w_invariant(
    terms: &SigmaA2Terms,
    orbit: &OrbitModel,
    t_min: f64,
    t_max: f64,
    n_grid: usize,
) -> Result<WResult> {
    if t_min <= 0.0 || t_max <= t_min || n_grid < 16 {
        return Err(Error::InvalidInput("bad W-integration grid".into()));
    }
    let integral_on = |n: usize| -> Result<(Vec<f64>, Vec<f64>, Vec<f64>, f64)> {
        let grid: Vec<f64> = (0..n)
            .map(|i| {
                let s = i as f64 / (n - 1) as f64;
                t_min * (t_max / t_min).powf(s)
            })
            .collect();
        let mut e_vals = Vec::with_capacity(n);
        let mut d_vals = Vec::with_capacity(n);
        for &t in &grid {
            let v = et_dt(terms, orbit, t)?;
            e_vals.push(v.e_t_max);
            d_vals.push(v.d_t_max);
        }
        // trapezoid in log t: ∫ d_t dt/t = ∫ d_t d(ln t)
        let mut acc = 0.0;
        for i in 1..n {
            let dlog = (grid[i] / grid[i - 1]).ln();
            acc += 0.5 * (d_vals[i] + d_vals[i - 1]) * dlog;
        }
        Ok((grid, e_vals, d_vals, acc))
    };

    let (_, _, _, coarse) = integral_on(n_grid / 2)?;
    let (grid, e_vals, d_vals, mut integral) = integral_on(n_grid)?;

    // small-t head: d_t = A√t ⇒ ∫₀^{t_min} d_t dt/t = 2 A √t_min
    let a_small = d_vals[0] / grid[0].sqrt();
    if !(d_vals[0].abs() <= 10.0 * d_vals[1].abs() + 1e-30) {
        return Err(Error::NumericContract(
            "d_t grows towards t → 0: O(√t) ansatz violated".into(),
        ));
    }
    let head = 2.0 * a_small * grid[0].sqrt();

    // exponential tail from the last decade: d_t ≈ C e^{-ct}
    let tail_pts: Vec<usize> = (0..grid.len())
        .filter(|&i| grid[i] > t_max / 4.0 && d_vals[i].abs() > 1e-280)
        .collect();
    let (amp, rate, tail) = if tail_pts.len() >= 3 {
        let xs: Vec<f64> = tail_pts.iter().map(|&i| grid[i]).collect();
        let ys: Vec<f64> = tail_pts.iter().map(|&i| d_vals[i].abs().ln()).collect();
        let rate = -fit_slope(&xs, &ys);
        let amp = (ys[ys.len() - 1] + rate * xs[xs.len() - 1]).exp()
            * d_vals[tail_pts[tail_pts.len() - 1]].signum();
        // ∫_{t_max}^∞ C e^{-ct}/t dt ≤ C e^{-c t_max}/(c t_max)
        let tail = if rate > 0.0 {
            amp * (-rate * t_max).exp() / (rate * t_max)
        } else {
            0.0
        };
        (amp, rate, tail)
    } else {
        (0.0, 0.0, 0.0)
    };

    integral += head + tail;
    let w_max = -integral;
    let w_error = (integral - (coarse + head + tail)).abs()
        + tail.abs() * 0.5
        + (head * 0.01).abs();

    if rate <= 0.0 && amp != 0.0 {
        return Err(Error::NumericContract(
            "d_t does not decay exponentially: degenerate orbit?".into(),
        ));
    }

    Ok(WResult { t_grid: grid, e_t: e_vals, d_t: d_vals, w_max, w_error, decay_fit: (amp, rate) })
}
