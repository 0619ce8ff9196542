//! The Hessian of ½d²_{γσ} on the normal bundle and the normal-coordinate
//! volume density r(f) with dx = r(f) dy df.

use nalgebra::{DMatrix, SymmetricEigen};

use super::centralizer::CentralizerData;
use super::decompose::{effective_power, SemisimpleData};
use super::point::{log_map, SpacePoint};
use crate::error::{Error, Result};
use crate::liecore::{Automorphism, GroupElement, ReductiveAlgebra};

/// Even analytic function of a symmetric matrix via eigendecomposition.
fn sym_fun(m: &DMatrix<f64>, f: impl Fn(f64) -> f64) -> DMatrix<f64> {
    let sym = 0.5 * (m + m.transpose());
    let eig = SymmetricEigen::new(sym);
    let d = DMatrix::from_diagonal(&eig.eigenvalues.map(&f));
    &eig.eigenvectors * d * eig.eigenvectors.transpose()
}

/// Hessian of ½d²_{γσ} on p^⊥_σ(γ):
/// (ad(a)/sinh(ad a)) · (2 cosh(ad a) - (Ad(k^{-1})σ + σ^{-1}Ad(k))),
/// restricted to the normal space; must be symmetric positive definite.
pub fn hessian_displacement(
    alg: &ReductiveAlgebra,
    sigma: &Automorphism,
    sd: &SemisimpleData,
    cz: &CentralizerData,
) -> Result<DMatrix<f64>> {
    let r = cz.basis_p_perp.len();
    if r == 0 {
        return Ok(DMatrix::zeros(0, 0));
    }
    let ad_a = alg.ad(&sd.a);
    // x/sinh(x) and cosh are even, so the spectral calculus of the symmetric
    // matrix ad(a) applies directly.
    let front = sym_fun(&ad_a, |x| if x.abs() < 1e-12 { 1.0 } else { x / x.sinh() });
    let cosh_ada = sym_fun(&ad_a, f64::cosh);
    let tau = effective_power(sigma, sd.sigma_power);
    let ad_k = alg.ad_group(&sd.k.matrix);
    let ad_k_inv = alg.ad_group(&sd.k.inverse().matrix);
    let tau_inv = tau
        .algebra_matrix
        .clone()
        .try_inverse()
        .expect("σ invertible");
    let middle = cosh_ada.map(|x| 2.0 * x)
        - (&ad_k_inv * &tau.algebra_matrix + &tau_inv * &ad_k);
    let full = &front * &middle;

    // restrict to p^⊥_σ(γ)
    let dim = alg.dim();
    let mut proj = DMatrix::<f64>::zeros(r, dim);
    for (i, b) in cz.basis_p_perp.iter().enumerate() {
        for j in 0..dim {
            proj[(i, j)] = b[j];
        }
    }
    let restricted = &proj * &full * proj.transpose();
    let symmetrized = 0.5 * (&restricted + &restricted.transpose());
    let asym = (&restricted - &restricted.transpose()).norm();
    if asym > 1e-8 {
        return Err(Error::Invariant(format!(
            "Hessian not symmetric on p^⊥_σ(γ): residual {asym:.3e} (wrong centralizer split?)"
        )));
    }
    let eig = SymmetricEigen::new(symmetrized.clone());
    for &l in eig.eigenvalues.iter() {
        if l < 1e-10 {
            return Err(Error::NumericContract(format!(
                "Hessian eigenvalue {l:.3e} not positive (wrong centralizer split?)"
            )));
        }
    }
    Ok(symmetrized)
}

/// Embed coordinates in the p^⊥_σ(γ)-basis into ambient algebra coordinates.
pub(crate) fn embed(basis: &[Vec<f64>], coords: &[f64], dim: usize) -> Vec<f64> {
    let mut v = vec![0.0; dim];
    for (c, b) in coords.iter().zip(basis) {
        for (x, y) in v.iter_mut().zip(b) {
            *x += c * y;
        }
    }
    v
}

/// Normal-coordinate density r(f): Jacobian determinant of the chart
/// (y, f) ↦ p(exp(y)·exp(f)) at (0, f), with respect to orthonormal frames.
///
/// Derivatives use a 5-point stencil on the Riemannian logarithm at the
/// target point; r(0) = 1 to 1e-6 by construction of the chart.
pub fn normal_density(
    alg: &ReductiveAlgebra,
    sd: &SemisimpleData,
    cz: &CentralizerData,
    f_coords: &[f64],
) -> Result<f64> {
    let dim = alg.dim();
    let m = alg.dim_p;
    if cz.basis_p_perp.is_empty() {
        return Ok(1.0);
    }
    if f_coords.len() != cz.basis_p_perp.len() {
        return Err(Error::InvalidInput(
            "f must have dim p^⊥_σ(γ) coordinates".into(),
        ));
    }
    let _ = sd;

    let f_amb = embed(&cz.basis_p_perp, f_coords, dim);
    let chart = |y: &[f64], fc: &[f64]| -> GroupElement {
        let y_amb = embed(&cz.basis_p_sigma, y, dim);
        let fa = embed(&cz.basis_p_perp, fc, dim);
        GroupElement::new(alg.exp_vec(&y_amb) * alg.exp_vec(&fa), alg.name.clone())
    };
    let center = SpacePoint::new(chart(&vec![0.0; cz.p], f_coords));

    // tangent columns via the log map at the center; 5-point stencil
    let h = 1e-3;
    let mut jac = DMatrix::<f64>::zeros(m, m);
    let mut col = 0usize;
    let deriv = |plus2: &[f64], plus: &[f64], minus: &[f64], minus2: &[f64]| -> Vec<f64> {
        (0..dim)
            .map(|i| (-plus2[i] + 8.0 * plus[i] - 8.0 * minus[i] + minus2[i]) / (12.0 * h))
            .collect()
    };

    // y-directions (tangent to X(γσ))
    for iy in 0..cz.p {
        let mut logs = Vec::new();
        for step in [2.0, 1.0, -1.0, -2.0] {
            let mut y = vec![0.0; cz.p];
            y[iy] = step * h;
            let pt = SpacePoint::new(chart(&y, f_coords));
            logs.push(log_map(alg, &center, &pt)?);
        }
        let d = deriv(&logs[0], &logs[1], &logs[2], &logs[3]);
        for i in 0..m {
            jac[(i, col)] = d[i];
        }
        col += 1;
    }
    // f-directions (normal fibre)
    for jf in 0..cz.basis_p_perp.len() {
        let mut logs = Vec::new();
        for step in [2.0, 1.0, -1.0, -2.0] {
            let mut fc = f_coords.to_vec();
            fc[jf] += step * h;
            let pt = SpacePoint::new(chart(&vec![0.0; cz.p], &fc));
            logs.push(log_map(alg, &center, &pt)?);
        }
        let d = deriv(&logs[0], &logs[1], &logs[2], &logs[3]);
        for i in 0..m {
            jac[(i, col)] = d[i];
        }
        col += 1;
    }
    debug_assert_eq!(col, m);
    let _ = &f_amb;

    let det = jac.determinant().abs();
    if det <= 0.0 || !det.is_finite() {
        return Err(Error::NumericContract(format!(
            "chart Jacobian degenerate: det {det:.3e}"
        )));
    }
    Ok(det)
}

/// Finite-difference Hessian of ½d²_{γσ} in the p^⊥_σ(γ)-directions, for
/// cross-checking the closed form (test helper, exposed for the selftest).
pub fn hessian_fd(
    alg: &ReductiveAlgebra,
    sigma: &Automorphism,
    sd: &SemisimpleData,
    cz: &CentralizerData,
    h: f64,
) -> Result<DMatrix<f64>> {
    use super::decompose::displacement;
    use crate::liecore::TwistedElement;
    let r = cz.basis_p_perp.len();
    let dim = alg.dim();
    let tau_gamma = sd
        .g
        .mul(&GroupElement::new(alg.exp_vec(&sd.a), alg.name.clone()))
        .mul(&sd.k.inverse())
        .mul(&effective_power(sigma, sd.sigma_power).apply_group(&sd.g.inverse()));
    let te = TwistedElement::new(tau_gamma, sd.sigma_power);
    let base = sd.g.clone();
    let f = |xi: &[f64]| -> Result<f64> {
        let g = GroupElement::new(&base.matrix * alg.exp_vec(xi), alg.name.clone());
        let d = displacement(alg, sigma, &te, &SpacePoint::new(g))?;
        Ok(0.5 * d * d)
    };
    let mut out = DMatrix::<f64>::zeros(r, r);
    for i in 0..r {
        for j in 0..r {
            let e = |si: f64, sj: f64| -> Result<f64> {
                let mut c = vec![0.0; r];
                c[i] += si * h;
                c[j] += sj * h;
                f(&embed(&cz.basis_p_perp, &c, dim))
            };
            let v = (e(1.0, 1.0)? - e(1.0, -1.0)? - e(-1.0, 1.0)? + e(-1.0, -1.0)?)
                / (4.0 * h * h);
            out[(i, j)] = v;
        }
    }
    Ok(out)
}
