//! Asymptotics of twisted characters χ_d(u₀σ e^{y/d}) against the
//! fixed-point leading term d^{n} Σ r^d φ R(y).
//!
//! For the CP¹-factor catalog the exact character reduces to complete
//! homogeneous symmetric functions of 2×2 eigenvalues, so the sweep over d
//! is closed-form on both sides.

use num_complex::Complex64;

use super::fixed_point::{fixed_point_data, FixedPointData};
use crate::error::{Error, Result};
use crate::numerics::fit_slope;
use crate::numerics::matfun::{expm, CMat};

/// Error sequence and fits of a character-asymptotics sweep.
#[derive(Debug, Clone)]
pub struct AsymptoticsReport {
    pub d_list: Vec<u32>,
    /// ε_d = |χ_d(u₀σe^{y/d})·d^{-n} - Σ_{j max} r^d φ R(y)|
    pub eps: Vec<f64>,
    /// Fitted slope of log ε_d against log d.
    pub eps_slope: f64,
    /// Exact dimensions of E_d.
    pub dims: Vec<usize>,
    /// Fitted growth exponent of dim E_d (should match n_λ).
    pub dim_exponent: f64,
    pub n_max: usize,
    /// Per-d exact and leading values, for CSV emission.
    pub exact: Vec<Complex64>,
    pub leading: Vec<Complex64>,
}

/// tr Sym^m(W) for a 2×2 matrix: h_m(μ₁, μ₂).
fn sym_trace(w: &CMat, m: u32) -> Complex64 {
    let tr = w[(0, 0)] + w[(1, 1)];
    let det = w[(0, 0)] * w[(1, 1)] - w[(0, 1)] * w[(1, 0)];
    let disc = (tr * tr - det * Complex64::new(4.0, 0.0)).sqrt();
    let half = Complex64::new(0.5, 0.0);
    let m1 = (tr + disc) * half;
    let m2 = (tr - disc) * half;
    if (m1 - m2).norm() > 1e-8 * (m1.norm() + m2.norm()).max(1e-300) {
        (m1.powu(m + 1) - m2.powu(m + 1)) / (m1 - m2)
    } else {
        // h_m(μ, μ) = (m+1) μ^m
        m1.powu(m) * Complex64::new(m as f64 + 1.0, 0.0)
    }
}

/// Run the character-asymptotics check for a product of CP¹ factors.
///
/// `u0_factors` are the 2×2 unitary matrices of u₀ per factor, `m0_factors`
/// the σ-candidate matrices (identity for σ = id), `ks` the weight
/// multiples, `c1` the σ-extension phase of the d = 1 member, and
/// `y_factors` the defining action of y ∈ z̄ per factor.
pub fn char_asymptotics_check(
    u0_factors: &[CMat],
    m0_factors: &[CMat],
    ks: &[u32],
    c1: Complex64,
    y_factors: &[CMat],
    d_list: &[u32],
) -> Result<(AsymptoticsReport, FixedPointData)> {
    if u0_factors.len() != m0_factors.len() || u0_factors.len() != ks.len() {
        return Err(Error::InvalidInput("factor data lengths disagree".into()));
    }
    let ms: Vec<CMat> = u0_factors
        .iter()
        .zip(m0_factors)
        .map(|(u, m)| u * m)
        .collect();
    // y must commute with the twisted action on every active factor
    for ((m, y), &k) in ms.iter().zip(y_factors).zip(ks) {
        if k > 0 && (m * y - y * m).norm() > 1e-9 * (1.0 + m.norm() * y.norm()) {
            return Err(Error::InvalidInput(
                "y is not in the twisted centralizer of u₀σ".into(),
            ));
        }
    }
    let fp = fixed_point_data(&ms, ks, c1)?;

    let active: Vec<usize> = ks
        .iter()
        .enumerate()
        .filter(|(_, &k)| k > 0)
        .map(|(i, _)| i)
        .collect();

    let mut eps = Vec::new();
    let mut dims = Vec::new();
    let mut exact_list = Vec::new();
    let mut leading_list = Vec::new();
    for &d in d_list {
        // exact character: product over active factors of c1^d tr Sym^{dk}(M e^{ρ(y)/d})
        let mut chi = c1.powu(d);
        let mut dim: usize = 1;
        for &f in &active {
            let scaled = y_factors[f].map(|x| x / Complex64::new(d as f64, 0.0));
            let w = &ms[f] * expm(&scaled);
            chi *= sym_trace(&w, d * ks[f]);
            dim *= (d * ks[f] + 1) as usize;
        }
        // leading term
        let y_active: Vec<CMat> = active.iter().map(|&f| y_factors[f].clone()).collect();
        let mut lead = Complex64::new(0.0, 0.0);
        for &j in &fp.j_max {
            let r = fp.components[j].r.powu(d);
            lead += r * fp.components[j].phi * fp.r_function(j, &y_active);
        }
        let scaled_exact = chi / Complex64::new((d as f64).powi(fp.n_max as i32), 0.0);
        eps.push((scaled_exact - lead).norm());
        dims.push(dim);
        exact_list.push(chi);
        leading_list.push(lead);
    }

    let logs_d: Vec<f64> = d_list.iter().map(|&d| (d as f64).ln()).collect();
    let logs_eps: Vec<f64> = eps.iter().map(|e| e.max(1e-300).ln()).collect();
    let eps_slope = fit_slope(&logs_d, &logs_eps);
    let logs_dim: Vec<f64> = dims.iter().map(|&x| (x as f64).ln()).collect();
    let dim_exponent = fit_slope(&logs_d, &logs_dim);
    let n_max = fp.n_max;

    Ok((
        AsymptoticsReport {
            d_list: d_list.to_vec(),
            eps,
            eps_slope,
            dims,
            dim_exponent,
            n_max,
            exact: exact_list,
            leading: leading_list,
        },
        fp,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ident() -> CMat {
        CMat::identity(2, 2)
    }

    fn rot(th: f64) -> CMat {
        CMat::from_fn(2, 2, |i, j| match (i, j) {
            (0, 0) => Complex64::from_polar(1.0, th),
            (1, 1) => Complex64::from_polar(1.0, -th),
            _ => Complex64::new(0.0, 0.0),
        })
    }

    fn su2_y(a: f64) -> CMat {
        // anti-Hermitian torus direction
        CMat::from_fn(2, 2, |i, j| match (i, j) {
            (0, 0) => Complex64::new(0.0, a),
            (1, 1) => Complex64::new(0.0, -a),
            _ => Complex64::new(0.0, 0.0),
        })
    }

    #[test]
    fn identity_case_dimension_count() {
        // u₀ = 1, y = 0: χ_d = d+1 = d·R(0) + O(1); ε_d = O(1)·d^{-1}·… here
        // ε_d = |(d+1)/d - 1| = 1/d, slope -1.
        let d_list: Vec<u32> = (2..40).map(|i| 5 * i).collect();
        let (rep, _) = char_asymptotics_check(
            &[ident()],
            &[ident()],
            &[1],
            Complex64::new(1.0, 0.0),
            &[CMat::zeros(2, 2)],
            &d_list,
        )
        .unwrap();
        assert_eq!(rep.n_max, 1);
        assert!((rep.eps_slope + 1.0).abs() < 0.05, "slope {}", rep.eps_slope);
        assert!((rep.dim_exponent - 1.0).abs() < 0.02);
    }

    #[test]
    fn generic_torus_is_exact() {
        // isolated fixed points: holomorphic Lefschetz is exact at y = 0,
        // so ε_d should be at machine scale.
        let (rep, _) = char_asymptotics_check(
            &[rot(0.9)],
            &[ident()],
            &[1],
            Complex64::new(1.0, 0.0),
            &[CMat::zeros(2, 2)],
            &[10, 20, 40],
        )
        .unwrap();
        for e in &rep.eps {
            assert!(*e < 1e-9, "eps {e}");
        }
    }

    #[test]
    fn nonzero_y_decays_like_one_over_d() {
        let (rep, _) = char_asymptotics_check(
            &[rot(0.7)],
            &[ident()],
            &[1],
            Complex64::new(1.0, 0.0),
            &[su2_y(0.3)],
            &(2..=20).map(|i| 10 * i).collect::<Vec<_>>(),
        )
        .unwrap();
        assert!(rep.eps_slope < -0.9, "slope {}", rep.eps_slope);
    }
}
