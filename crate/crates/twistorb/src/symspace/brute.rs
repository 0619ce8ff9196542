//! Brute-force twisted orbital integrals
//!
//!   Tr^[γσ][Q] = ∫_{p^⊥_σ(γ)} Tr^E[σ^E q(e^{-f} γ e^{σf})] r(f) df
//!
//! for invariant kernels q with Gaussian decay. This is the independent
//! oracle against which the closed-form heat evaluator is validated.

use num_complex::Complex64;
use rayon::prelude::*;

use super::centralizer::CentralizerData;
use super::decompose::{effective_power, SemisimpleData};
use super::density::{embed, normal_density};
use crate::error::{Error, Result};
use crate::liecore::{Automorphism, ReductiveAlgebra};
use crate::numerics::matfun::CMat;
use crate::numerics::quad::{gauss_legendre_on, tensor};
use crate::numerics::pairwise_sum;

/// Quadrature specification for the normal-fibre integral.
#[derive(Debug, Clone, Copy)]
pub struct QuadSpec {
    /// Gauss–Legendre order per axis.
    pub order: usize,
    /// Relative level at the truncation radius that triggers the decay abort.
    pub decay_floor: f64,
}

impl Default for QuadSpec {
    fn default() -> Self {
        QuadSpec { order: 80, decay_floor: 1e-10 }
    }
}

/// Result of a brute-force orbital integral with error diagnostics.
#[derive(Debug, Clone)]
pub struct BruteResult {
    pub value: Complex64,
    pub truncation_radius: f64,
    /// |value(order) - value(order/2)| as a quadrature error estimate.
    pub quad_error: f64,
    /// Largest integrand magnitude observed on the truncation boundary,
    /// relative to the peak.
    pub boundary_level: f64,
}

/// Evaluate the orbital integral of an invariant kernel.
///
/// `kernel` maps a group element (as a matrix in the defining representation)
/// to q(g) ∈ End(E); `sigma_e` is ρ^E(σ^j). The integral runs over
/// p^⊥_σ(γ), which must have dimension ≤ 2 for tensor quadrature.
pub fn brute_force_orbital(
    alg: &ReductiveAlgebra,
    sigma: &Automorphism,
    sd: &SemisimpleData,
    cz: &CentralizerData,
    kernel: &(dyn Fn(&CMat) -> CMat + Sync),
    sigma_e: &CMat,
    quad: QuadSpec,
) -> Result<BruteResult> {
    let dim = alg.dim();
    let nf = cz.basis_p_perp.len();
    if nf > 2 {
        return Err(Error::InvalidInput(format!(
            "dim p^⊥_σ(γ) = {nf} > 2: tensor quadrature refused"
        )));
    }
    let tau = effective_power(sigma, sd.sigma_power);
    let gamma_nf = alg.exp_vec(&sd.a)
        * sd.k
            .inverse()
            .matrix
            .clone();

    let integrand_raw = |f_coords: &[f64]| -> Result<Complex64> {
        let f_amb = embed(&cz.basis_p_perp, f_coords, dim);
        let sigma_f = tau.apply_algebra(&f_amb);
        let neg_f: Vec<f64> = f_amb.iter().map(|x| -x).collect();
        let arg = alg.exp_vec(&neg_f) * &gamma_nf * alg.exp_vec(&sigma_f);
        let q = kernel(&arg);
        let tr = (sigma_e * q).trace();
        let r = normal_density(alg, sd, cz, f_coords)?;
        Ok(tr * Complex64::new(r, 0.0))
    };

    if nf == 0 {
        let v = integrand_raw(&[])?;
        return Ok(BruteResult {
            value: v,
            truncation_radius: 0.0,
            quad_error: 0.0,
            boundary_level: 0.0,
        });
    }

    // choose the truncation radius from the actual decay of the integrand
    let peak = integrand_raw(&vec![0.0; nf])?.norm().max(1e-300);
    let mut radius = 1.0_f64;
    loop {
        let mut worst = 0.0_f64;
        for axis in 0..nf {
            for sgn in [-1.0, 1.0] {
                let mut f = vec![0.0; nf];
                f[axis] = sgn * radius;
                worst = worst.max(integrand_raw(&f)?.norm());
            }
            // also probe the diagonal in 2-D
            if nf == 2 {
                let d = radius / 2f64.sqrt();
                for (s1, s2) in [(1.0, 1.0), (1.0, -1.0), (-1.0, 1.0), (-1.0, -1.0)] {
                    worst = worst.max(integrand_raw(&[s1 * d, s2 * d])?.norm());
                }
            }
        }
        if worst < 1e-14 * peak {
            break;
        }
        radius += 0.5;
        if radius > 60.0 {
            return Err(Error::KernelDecay(format!(
                "integrand at radius {radius} still {worst:.3e} of peak"
            )));
        }
        // borrow checker appeasement: worst recomputed next round
        let _ = worst;
    }

    let eval_with_order = |order: usize| -> Result<(Complex64, f64)> {
        let rule = gauss_legendre_on(order, -radius, radius);
        let (nodes, weights) = tensor(&rule, nf);
        let terms: Vec<Result<Complex64>> = nodes
            .par_iter()
            .zip(weights.par_iter())
            .map(|(pt, w)| Ok(integrand_raw(pt)? * Complex64::new(*w, 0.0)))
            .collect();
        let mut vals = Vec::with_capacity(terms.len());
        for t in terms {
            vals.push(t?);
        }
        // boundary level: largest |integrand| among nodes close to the boundary
        let mut boundary = 0.0_f64;
        for (pt, v) in nodes.iter().zip(&vals) {
            let rmax = pt.iter().cloned().fold(0.0_f64, |acc, x| acc.max(x.abs()));
            if rmax > 0.95 * radius {
                boundary = boundary.max(v.norm());
            }
        }
        Ok((pairwise_sum(&vals), boundary / peak))
    };

    let (coarse, _) = eval_with_order(quad.order / 2)?;
    let (value, boundary_level) = eval_with_order(quad.order)?;
    let quad_error = (value - coarse).norm();

    if boundary_level > quad.decay_floor {
        return Err(Error::KernelDecay(format!(
            "integrand not negligible at the truncation radius (level {boundary_level:.3e})"
        )));
    }

    Ok(BruteResult { value, truncation_radius: radius, quad_error, boundary_level })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liecore::{build_catalog, GroupElement, TwistedElement};
    use crate::oracles::sl2r_heat_kernel;
    use crate::symspace::centralizer::twisted_centralizer;
    use crate::symspace::decompose::{semisimple_decompose, MinimizerOptions};
    use crate::symspace::point::SpacePoint;

    #[test]
    fn zero_kernel_gives_zero() {
        let alg = build_catalog("sl2r", 1.0).unwrap();
        let sigma = Automorphism::identity(&alg);
        let te = TwistedElement::new(
            GroupElement::new(alg.exp_vec(&[0.0, 0.0, 0.8]), "sl2r"),
            1,
        );
        let sd = semisimple_decompose(
            &alg,
            &sigma,
            &te,
            &SpacePoint::basepoint(&alg),
            MinimizerOptions::default(),
        )
        .unwrap();
        let cz = twisted_centralizer(&alg, &sigma, &sd).unwrap();
        let kernel = |_: &CMat| CMat::zeros(1, 1);
        let one = CMat::identity(1, 1);
        let r = brute_force_orbital(&alg, &sigma, &sd, &cz, &kernel, &one, QuadSpec::default())
            .unwrap();
        assert!(r.value.norm() < 1e-300);
    }

    #[test]
    fn identity_class_is_on_diagonal_value() {
        // γ = 1, σ = id: the integral degenerates to q(1) = p_t(x,x)
        let alg = build_catalog("sl2r", 1.0).unwrap();
        let sigma = Automorphism::identity(&alg);
        let te = TwistedElement::new(GroupElement::identity(&alg), 1);
        let sd = semisimple_decompose(
            &alg,
            &sigma,
            &te,
            &SpacePoint::basepoint(&alg),
            MinimizerOptions::default(),
        )
        .unwrap();
        let cz = twisted_centralizer(&alg, &sigma, &sd).unwrap();
        let t = 1.0;
        let kernel = |g: &CMat| {
            // distance from p1 to p(g) via the polar part
            let ge = GroupElement::new(g.clone(), "sl2r");
            let (a, _) = crate::liecore::global_cartan(&alg, &ge).unwrap();
            let d = alg.norm(&a);
            CMat::from_element(1, 1, Complex64::new(sl2r_heat_kernel(1.0, t, d), 0.0))
        };
        let one = CMat::identity(1, 1);
        let r = brute_force_orbital(&alg, &sigma, &sd, &cz, &kernel, &one, QuadSpec::default())
            .unwrap();
        let expect = sl2r_heat_kernel(1.0, t, 0.0);
        assert!((r.value.re - expect).abs() < 1e-12);
        assert!(r.value.im.abs() < 1e-15);
    }
}
