//! The main identity: twisted orbital integrals of exp(-t L^X_A) as an
//! explicit Gaussian integral over k_σ(γ).
//!
//! Tr^[γσ][exp(-t L^X_A)] = e^{-|a|²/2t} (2πt)^{-p/2}
//!   ∫ J(Y)·Tr^E[ρ(k⁻¹σ) e^{-iρ(Y) - tA}] e^{-|Y|²/2t} dY/(2πt)^{q/2}.
//!
//! Quadrature: tensor Gauss–Hermite for q ≤ 2; for q = 3 with an su(2)
//! centralizer and an Ad-invariant integrand the integral radialises.

use num_complex::Complex64;
use rayon::prelude::*;

use super::jfunc::JEvaluator;
use crate::error::{Error, Result};
use crate::numerics::matfun::{expm, CMat};
use crate::numerics::pairwise_sum;
use crate::numerics::quad::{gauss_hermite, gauss_legendre_on, tensor};
use crate::reps::Irrep;

/// A heat-operator query exp(-t L^X_A).
pub struct HeatQuery<'a> {
    pub t: f64,
    /// Self-adjoint A on E commuting with ρ(K^σ); zero matrix for A = 0.
    pub a_matrix: CMat,
    pub irrep: &'a Irrep,
    /// Gauss–Hermite order per axis.
    pub quad_order: usize,
}

impl<'a> HeatQuery<'a> {
    pub fn new(t: f64, a_matrix: CMat, irrep: &'a Irrep) -> Result<Self> {
        if t <= 0.0 {
            return Err(Error::InvalidInput("heat time must be positive".into()));
        }
        if (&a_matrix - a_matrix.adjoint()).norm() > 1e-10 * (1.0 + a_matrix.norm()) {
            return Err(Error::InvalidInput("A must be self-adjoint".into()));
        }
        let comm_sigma =
            (&a_matrix * &irrep.rho_sigma - &irrep.rho_sigma * &a_matrix).norm();
        if comm_sigma > 1e-10 * (1.0 + a_matrix.norm()) {
            return Err(Error::InvalidInput("A must commute with ρ(σ)".into()));
        }
        Ok(HeatQuery { t, a_matrix, irrep, quad_order: 64 })
    }
}

/// Result record of an orbital evaluation.
#[derive(Debug, Clone)]
pub struct OrbitalResult {
    pub value: Complex64,
    pub quad_error: f64,
    pub branch_failures: usize,
    /// Largest integrand magnitude at the outermost quadrature shell,
    /// relative to the maximum (Gaussian-tail check).
    pub tail_level: f64,
}

/// Check that k_σ(γ) carries an su(2) structure (for radialisation).
fn is_su2_like(je: &JEvaluator) -> bool {
    let q = je.cz.q;
    if q != 3 {
        return false;
    }
    // brackets [f_a, f_b] = c ε_{abc} f_c for a common |c|
    let mut c_abs = None;
    for a in 0..3 {
        for b in 0..3 {
            if a == b {
                continue;
            }
            let fa = &je.cz.basis_k_sigma[a];
            let fb = &je.cz.basis_k_sigma[b];
            let br = je.alg.bracket(fa, fb);
            // expand in the k_σ basis
            let coords: Vec<f64> = je
                .cz
                .basis_k_sigma
                .iter()
                .map(|f| f.iter().zip(&br).map(|(x, y)| x * y).sum())
                .collect();
            let c = 3 - a - b;
            for (i, v) in coords.iter().enumerate() {
                if i == c {
                    match c_abs {
                        None => c_abs = Some(v.abs()),
                        Some(ca) => {
                            if (v.abs() - ca).abs() > 1e-9 {
                                return false;
                            }
                        }
                    }
                } else if v.abs() > 1e-9 {
                    return false;
                }
            }
            // residual outside the span
            let back = crate::symspace::embed_in(&je.cz.basis_k_sigma, &coords, je.alg.dim());
            if br.iter().zip(&back).map(|(x, y)| (x - y).abs()).fold(0.0_f64, f64::max) > 1e-9 {
                return false;
            }
        }
    }
    true
}

/// Integrand J(Y)·Tr^E[ρ(k⁻¹σ) e^{-iρ(Y) - tA}] at ambient-free coordinates.
fn integrand(
    je: &JEvaluator,
    hq: &HeatQuery,
    rho_k_sigma: &CMat,
    y: &[f64],
) -> Result<Complex64> {
    let j = je.j_function(y)?;
    let y_amb = je.embed_y(y);
    let rho_y = hq.irrep.rho(&y_amb);
    let arg = rho_y.map(|x| x * Complex64::new(0.0, -1.0))
        - hq.a_matrix.map(|x| x * Complex64::new(hq.t, 0.0));
    let tr = (rho_k_sigma * expm(&arg)).trace();
    Ok(j * tr)
}

/// Evaluate the heat orbital integral.
pub fn heat_orbital(je: &JEvaluator, hq: &HeatQuery) -> Result<OrbitalResult> {
    let p = je.cz.p;
    let q = je.cz.q;
    let t = hq.t;
    let two_pi_t = 2.0 * std::f64::consts::PI * t;
    let a_norm = je.alg.norm(&je.sd.a);
    let prefactor = (-a_norm * a_norm / (2.0 * t)).exp() / two_pi_t.powf(p as f64 / 2.0);
    let rho_k_sigma = hq.irrep.rho_group(&je.sd.k.inverse()) * &hq.irrep.rho_sigma;

    if q == 0 {
        let v = integrand(je, hq, &rho_k_sigma, &[])?;
        return Ok(OrbitalResult {
            value: v * Complex64::new(prefactor, 0.0),
            quad_error: 0.0,
            branch_failures: 0,
            tail_level: 0.0,
        });
    }

    let eval_nodes = |pts: &[Vec<f64>], wts: &[f64]| -> Result<(Complex64, usize, f64)> {
        let results: Vec<Result<Complex64>> = pts
            .par_iter()
            .zip(wts.par_iter())
            .map(|(pt, w)| Ok(integrand(je, hq, &rho_k_sigma, pt)? * Complex64::new(*w, 0.0)))
            .collect();
        let mut vals = Vec::with_capacity(results.len());
        let mut failures = 0usize;
        for r in results {
            match r {
                Ok(v) => vals.push(v),
                Err(Error::BranchFailure(_)) => {
                    failures += 1;
                    vals.push(Complex64::new(0.0, 0.0));
                }
                Err(e) => return Err(e),
            }
        }
        if failures * 1000 > pts.len() {
            return Err(Error::NumericContract(format!(
                "branch failure density {failures}/{} exceeds 0.1%",
                pts.len()
            )));
        }
        // tail diagnostic
        let rmax = pts
            .iter()
            .map(|p| p.iter().map(|x| x * x).sum::<f64>().sqrt())
            .fold(0.0_f64, f64::max);
        let mut peak = 0.0_f64;
        let mut tail = 0.0_f64;
        for (pt, v) in pts.iter().zip(&vals) {
            let r = pt.iter().map(|x| x * x).sum::<f64>().sqrt();
            let n = v.norm();
            peak = peak.max(n);
            if r > 0.9 * rmax {
                tail = tail.max(n);
            }
        }
        Ok((pairwise_sum(&vals), failures, tail / peak.max(1e-300)))
    };

    if q <= 2 {
        // Y = √(2t)·x turns the weight into e^{-|x|²}
        let scale = (2.0 * t).sqrt();
        let make = |order: usize| -> (Vec<Vec<f64>>, Vec<f64>) {
            let rule = gauss_hermite(order);
            let (nodes, weights) = tensor(&rule, q);
            let pts: Vec<Vec<f64>> = nodes
                .iter()
                .map(|n| n.iter().map(|x| x * scale).collect())
                .collect();
            (pts, weights)
        };
        let (pts_c, wts_c) = make(hq.quad_order / 2);
        let (coarse, _, _) = eval_nodes(&pts_c, &wts_c)?;
        let (pts, wts) = make(hq.quad_order);
        let (fine, failures, tail) = eval_nodes(&pts, &wts)?;
        let norm = std::f64::consts::PI.powf(-(q as f64) / 2.0);
        let value = fine * Complex64::new(prefactor * norm, 0.0);
        let quad_error = (fine - coarse).norm() * prefactor * norm;
        return Ok(OrbitalResult { value, quad_error, branch_failures: failures, tail_level: tail });
    }

    if q == 3 && is_su2_like(je) {
        // Ad-invariant integrand: radialise along the first basis direction
        // ∫_{R³} f e^{-|Y|²/2t} dY = 4π ∫_0^∞ f(r) r² e^{-r²/2t} dr
        let r_max = 14.0 * t.sqrt().max(1.0);
        let make = |order: usize| -> (Vec<Vec<f64>>, Vec<f64>) {
            let rule = gauss_legendre_on(order, 0.0, r_max);
            let pts: Vec<Vec<f64>> =
                rule.nodes.iter().map(|r| vec![*r, 0.0, 0.0]).collect();
            let wts: Vec<f64> = rule
                .nodes
                .iter()
                .zip(&rule.weights)
                .map(|(r, w)| w * r * r * (-r * r / (2.0 * t)).exp())
                .collect();
            (pts, wts)
        };
        let (pts_c, wts_c) = make(120);
        let (coarse, _, _) = eval_nodes(&pts_c, &wts_c)?;
        let (pts, wts) = make(240);
        let (fine, failures, tail) = eval_nodes(&pts, &wts)?;
        let norm = 4.0 * std::f64::consts::PI / two_pi_t.powf(1.5);
        let value = fine * Complex64::new(prefactor * norm, 0.0);
        let quad_error = (fine - coarse).norm() * prefactor * norm;
        return Ok(OrbitalResult { value, quad_error, branch_failures: failures, tail_level: tail });
    }

    Err(Error::InvalidInput(format!(
        "q = {q} > 3 or non-su(2) centralizer: tensor quadrature unsupported"
    )))
}
