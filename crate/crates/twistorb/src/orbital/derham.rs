//! De Rham orbital supertraces for flat homogeneous bundles:
//!
//! Tr_s^[γσ][exp(-t D^{X,F,2}/2)] and the number-operator-weighted variant
//! Tr_s^[γσ][(N - m/2) exp(-t D^{X,F,2}/2)], via
//!
//! Tr_s^{Λ·(p*)}[ρ^Λ(k⁻¹σ) e^{-iρ^Λ(Y)}] = det(1 - e^{i ad Y}Ad(σ⁻¹k))|_p,
//!
//! with the weighted exterior trace computed from the characteristic
//! polynomial det(1 - sM) instead of 2^m-dimensional exterior matrices.

use num_complex::Complex64;
use rayon::prelude::*;

use super::jfunc::JEvaluator;
use crate::error::{Error, Result};
use crate::liecore::{casimir_constants, ReductiveAlgebra};
use crate::numerics::matfun::{charpoly_one_minus, det, expm, CMat};
use crate::numerics::pairwise_sum;
use crate::numerics::quad::{gauss_hermite, gauss_legendre_on, tensor};
use crate::reps::Irrep;

/// The inducing endomorphism M(Y) = e^{i ad Y} Ad(σ⁻¹k) on p ⊗ C.
fn exterior_generator(je: &JEvaluator, y: &[f64]) -> CMat {
    let m = je.alg.dim_p;
    let dim = je.alg.dim();
    let y_amb = je.embed_y(y);
    let ad_y = je.alg.ad(&y_amb);
    // restrict to p
    let mut ad_p = CMat::zeros(m, m);
    let mut g_inv_p = CMat::zeros(m, m);
    // (Ad(k⁻¹)σ)⁻¹ = σ⁻¹ Ad(k)
    let g_full = &je.g0;
    let g_inv = g_full
        .clone()
        .try_inverse()
        .expect("Ad(k⁻¹)σ invertible");
    for i in 0..m {
        for j in 0..m {
            ad_p[(i, j)] = Complex64::new(ad_y[(i, j)], 0.0);
            g_inv_p[(i, j)] = Complex64::new(g_inv[(i, j)], 0.0);
        }
    }
    let _ = dim;
    expm(&ad_p.map(|x| x * Complex64::new(0.0, 1.0))) * g_inv_p
}

/// Tr_s[Λ(M)] = det(1 - M) and Tr_s[(N - m/2)Λ(M)] via the characteristic
/// polynomial of M.
fn exterior_supertraces(m_mat: &CMat) -> (Complex64, Complex64) {
    let m = m_mat.nrows();
    let coeffs = charpoly_one_minus(m_mat);
    // det(1 - M) = Σ c_k
    let plain: Complex64 = coeffs.iter().sum();
    // Tr_s[N·Λ(M)] = ∂_s det(1 - sM)|_{s=1} = Σ k·c_k
    let weighted_n: Complex64 = coeffs
        .iter()
        .enumerate()
        .map(|(k, c)| c * Complex64::new(k as f64, 0.0))
        .sum();
    let half_m = Complex64::new(m as f64 / 2.0, 0.0);
    (plain, weighted_n - half_m * plain)
}

/// De Rham orbital supertrace.
///
/// `weighted = false`: Tr_s^[γσ][exp(-t D^{X,F,2}/2)];
/// `weighted = true`:  Tr_s^[γσ][(N^{Λ·(T*X)} - m/2) exp(-t D^{X,F,2}/2)].
pub fn derham_orbital_supertrace(
    alg: &ReductiveAlgebra,
    je: &JEvaluator,
    irrep: &Irrep,
    t: f64,
    weighted: bool,
    quad_order: usize,
) -> Result<Complex64> {
    if !irrep.is_g_rep() {
        return Err(Error::InvalidInput(
            "de Rham supertraces need a G-representation (flat bundle)".into(),
        ));
    }
    let cas = casimir_constants(alg);
    let p = je.cz.p;
    let q = je.cz.q;
    let two_pi_t = 2.0 * std::f64::consts::PI * t;
    let a_norm = alg.norm(&je.sd.a);
    let prefactor = (-a_norm * a_norm / (2.0 * t)).exp() / two_pi_t.powf(p as f64 / 2.0)
        * ((t / 48.0) * cas.tr_k_ckk + (t / 16.0) * cas.tr_p_ckp).exp();
    let rho_k_sigma = irrep.rho_group(&je.sd.k.inverse()) * &irrep.rho_sigma;
    // e^{(t/2) C^{g,E}} is scalar on the irreducible model
    let cas_factor = (0.5 * t * irrep.casimir_g).exp();

    let integrand = |y: &[f64]| -> Result<Complex64> {
        let m_mat = exterior_generator(je, y);
        let (plain, weighted_tr) = exterior_supertraces(&m_mat);
        let ext = if weighted { weighted_tr } else { plain };
        if ext.norm() < 1e-300 {
            return Ok(Complex64::new(0.0, 0.0));
        }
        let j = je.j_function(y)?;
        let y_amb = je.embed_y(y);
        let e = expm(&irrep.rho(&y_amb).map(|x| x * Complex64::new(0.0, -1.0)));
        let tr = (&rho_k_sigma * e).trace() * Complex64::new(cas_factor, 0.0);
        Ok(j * ext * tr)
    };

    if q == 0 {
        return Ok(integrand(&[])? * Complex64::new(prefactor, 0.0));
    }
    let collect = |pts: &[Vec<f64>], wts: &[f64]| -> Result<Complex64> {
        let vals: Vec<Result<Complex64>> = pts
            .par_iter()
            .zip(wts.par_iter())
            .map(|(y, w)| Ok(integrand(y)? * Complex64::new(*w, 0.0)))
            .collect();
        let mut acc = Vec::with_capacity(vals.len());
        for v in vals {
            acc.push(v?);
        }
        Ok(pairwise_sum(&acc))
    };
    if q <= 2 {
        let scale = (2.0 * t).sqrt();
        let rule = gauss_hermite(quad_order);
        let (nodes, weights) = tensor(&rule, q);
        let pts: Vec<Vec<f64>> = nodes
            .iter()
            .map(|n| n.iter().map(|x| x * scale).collect())
            .collect();
        let sum = collect(&pts, &weights)?;
        let norm = std::f64::consts::PI.powf(-(q as f64) / 2.0);
        return Ok(sum * Complex64::new(prefactor * norm, 0.0));
    }
    if q == 3 {
        // radial reduction: valid for Ad-invariant integrands (γ = 1-type
        // classes with su(2) centralizer); the character and det factors are
        // conjugation-invariant there.
        let r_max = 14.0 * t.sqrt().max(1.0);
        let rule = gauss_legendre_on(240, 0.0, r_max);
        let pts: Vec<Vec<f64>> = rule.nodes.iter().map(|r| vec![*r, 0.0, 0.0]).collect();
        let wts: Vec<f64> = rule
            .nodes
            .iter()
            .zip(&rule.weights)
            .map(|(r, w)| w * r * r * (-r * r / (2.0 * t)).exp())
            .collect();
        let sum = collect(&pts, &wts)?;
        let norm = 4.0 * std::f64::consts::PI / two_pi_t.powf(1.5);
        return Ok(sum * Complex64::new(prefactor * norm, 0.0));
    }
    Err(Error::InvalidInput("de Rham quadrature supports q ≤ 3".into()))
}

/// det(1 - e^{i ad Y}Ad(σ⁻¹k))|_p exposed for vanishing diagnostics.
#[allow(dead_code)]
pub(crate) fn exterior_det(je: &JEvaluator, y: &[f64]) -> Complex64 {
    det(&(CMat::identity(je.alg.dim_p, je.alg.dim_p) - exterior_generator(je, y)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liecore::{build_catalog, Automorphism, GroupElement, GroupMap, TwistedElement};
    use crate::reps::build_sym_irrep;
    use crate::symspace::{
        semisimple_decompose, twisted_centralizer, MinimizerOptions, SpacePoint,
    };

    fn make_je(
        name: &str,
        sigma: &Automorphism,
        p: &[f64],
        k: &[f64],
    ) -> (ReductiveAlgebra, JEvaluator) {
        let alg = build_catalog(name, 1.0).unwrap();
        let g = alg.exp_vec(p) * alg.exp_vec(k);
        let te = TwistedElement::new(GroupElement::new(g, name), 1);
        let sd = semisimple_decompose(
            &alg,
            sigma,
            &te,
            &SpacePoint::basepoint(&alg),
            MinimizerOptions::default(),
        )
        .unwrap();
        let cz = twisted_centralizer(&alg, sigma, &sd).unwrap();
        let je = JEvaluator::new(&alg, sigma, &sd, &cz).unwrap();
        (alg, je)
    }

    #[test]
    fn unweighted_vanishes_for_hyperbolic() {
        // dim b_σ(γ) ≥ 1: det factor ≡ 0 pointwise
        let alg = build_catalog("sl2r", 1.0).unwrap();
        let sigma = Automorphism::identity(&alg);
        let (alg, je) = make_je("sl2r", &sigma, &[0.8, 0.0, 0.0], &[0.0; 3]);
        assert!(je.cz.delta_rank >= 1);
        for &y in &[0.0_f64] {
            let _ = y;
        }
        let irrep = build_sym_irrep(&alg, 1, &sigma).unwrap();
        let v = derham_orbital_supertrace(&alg, &je, &irrep, 1.0, false, 32).unwrap();
        assert!(v.norm() < 1e-12, "unweighted de Rham {v}");
    }

    #[test]
    fn weighted_vanishes_for_dim_b_zero_elliptic() {
        // sl2r elliptic rotation: dim b = 0 and the weighted value is 0
        let alg = build_catalog("sl2r", 1.0).unwrap();
        let sigma = Automorphism::identity(&alg);
        let (alg, je) = make_je("sl2r", &sigma, &[0.0; 3], &[0.0, 0.0, 1.1]);
        assert_eq!(je.cz.delta_rank, 0);
        let irrep = build_sym_irrep(&alg, 2, &sigma).unwrap();
        let v = derham_orbital_supertrace(&alg, &je, &irrep, 0.7, true, 64).unwrap();
        assert!(v.norm() < 1e-9, "weighted elliptic {v}");
    }

    #[test]
    fn elliptic_derham_equals_euler_times_character_sl2c_conj() {
        // γ = 1, σ = complex conjugation on sl2c_real: X(γσ) = H² with
        // curvature -2, [e(TX(γσ))]^max = -1/π; trivial E gives -1/π.
        let alg = build_catalog("sl2c_real", 1.0).unwrap();
        let sigma = Automorphism::new(&alg, GroupMap::ComplexConj).unwrap();
        let (alg, je) = make_je("sl2c_real", &sigma, &[0.0; 6], &[0.0; 6]);
        assert_eq!((je.cz.p, je.cz.q), (2, 1));
        let irrep = build_sym_irrep(&alg, 0, &sigma).unwrap();
        for &t in &[0.5, 1.0, 2.0] {
            let v = derham_orbital_supertrace(&alg, &je, &irrep, t, false, 64).unwrap();
            let expect = -1.0 / std::f64::consts::PI;
            assert!(
                (v.re - expect).abs() < 1e-9,
                "t={t}: {} vs {}",
                v.re,
                expect
            );
            assert!(v.im.abs() < 1e-10);
        }
    }

    #[test]
    fn weighted_nonzero_for_sl2c_identity() {
        // γ = 1, σ = id on sl2c_real has dim b = 1: the weighted supertrace
        // survives (this is the torsion asymptotics integrand).
        let alg = build_catalog("sl2c_real", 1.0).unwrap();
        let sigma = Automorphism::identity(&alg);
        let (alg, je) = make_je("sl2c_real", &sigma, &[0.0; 6], &[0.0; 6]);
        assert_eq!(je.cz.delta_rank, 1);
        let irrep = build_sym_irrep(&alg, 2, &sigma).unwrap();
        let v = derham_orbital_supertrace(&alg, &je, &irrep, 1.0, true, 64).unwrap();
        assert!(v.norm() > 1e-6, "weighted sl2c value {v}");
        assert!(v.im.abs() < 1e-9 * v.norm());
    }
}
