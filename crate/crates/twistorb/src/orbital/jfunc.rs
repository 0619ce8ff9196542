//! The analytic function J_{γσ} on k_σ(γ):
//!
//! J(Y) = |det(1-Ad(γσ))|_{z_0^⊥}|^{-1/2}
//!        · Â(i ad Y|_{p_σ(γ)}) / Â(i ad Y|_{k_σ(γ)})
//!        · [ det(1-Ad(k⁻¹σ))|_{z^⊥_{σ,0}}^{-1}
//!            det(1-e^{-i ad Y}Ad(k⁻¹σ))|_{k^⊥_{σ,0}}
//!          / det(1-e^{-i ad Y}Ad(k⁻¹σ))|_{p^⊥_{σ,0}} ]^{1/2}
//!
//! The square root is tracked continuously from Y = 0, where its value is
//! 1/det(1-Ad(k⁻¹σ))|_{p^⊥_{σ,0}}; that determinant is positive because
//! Ad(k⁻¹σ) is orthogonal without fixed vectors on the complement.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::liecore::{Automorphism, ReductiveAlgebra};
use crate::numerics::matfun::{det, expm, to_complex, CMat, RMat};
use crate::numerics::sqrt_track::track_sqrt;
use crate::symspace::{CentralizerData, SemisimpleData};

/// Â of a self-adjoint or anti-Hermitian matrix:
/// det^{1/2}[(B/2)/sinh(B/2)], with pole proximity reported.
pub fn a_hat(m: &CMat) -> Result<f64> {
    let n = m.nrows();
    if n == 0 {
        return Ok(1.0);
    }
    let herm = (m - m.adjoint()).norm();
    let antiherm = (m + m.adjoint()).norm();
    let scale = m.norm().max(1.0);
    let mut prod = 1.0_f64;
    if herm < 1e-10 * scale {
        let sym = (m + m.adjoint()).map(|x| x * Complex64::new(0.5, 0.0));
        let eig = SymmetricEigen::new(sym);
        for &l in eig.eigenvalues.iter() {
            let f = if l.abs() < 1e-12 { 1.0 } else { (l / 2.0) / (l / 2.0).sinh() };
            prod *= f;
        }
    } else if antiherm < 1e-10 * scale {
        // eigenvalues ±iθ: (iθ/2)/sinh(iθ/2) = (θ/2)/sin(θ/2)
        let h = m.map(|x| x * Complex64::new(0.0, 1.0));
        let sym = (&h + h.adjoint()).map(|x| x * Complex64::new(0.5, 0.0));
        let eig = SymmetricEigen::new(sym);
        for &th in eig.eigenvalues.iter() {
            if th.abs() < 1e-12 {
                continue;
            }
            let s = (th / 2.0).sin();
            if s.abs() < 1e-12 {
                return Err(Error::NumericContract(format!(
                    "Â pole proximity: sin({:.3e}/2) ≈ 0",
                    th
                )));
            }
            prod *= (th / 2.0) / s;
        }
    } else {
        return Err(Error::InvalidInput(
            "a_hat expects a self-adjoint or anti-Hermitian matrix".into(),
        ));
    }
    if prod <= 0.0 {
        return Err(Error::NumericContract(format!(
            "Â determinant not positive: {prod:.3e}"
        )));
    }
    Ok(prod.sqrt())
}

/// Precomputed restriction data for evaluating J_{γσ}.
#[derive(Clone)]
pub struct JEvaluator {
    pub alg: ReductiveAlgebra,
    pub sd: SemisimpleData,
    pub cz: CentralizerData,
    /// Ad(k^{-1})·σ on g in the basis.
    pub g0: RMat,
    /// |det(1-Ad(γσ))|_{z_0^⊥-ambient}|^{-1/2}.
    pub prefactor: f64,
    /// det(1-Ad(k^{-1}σ)) on p^⊥_{σ,0} and k^⊥_{σ,0} (both positive).
    pub det_p0: f64,
    pub det_k0: f64,
    pub branch_steps: usize,
    pub branch_eps: f64,
}

fn restrict(m: &RMat, basis: &[Vec<f64>]) -> RMat {
    let r = basis.len();
    let dim = m.nrows();
    let mut out = RMat::zeros(r, r);
    for (i, bi) in basis.iter().enumerate() {
        for (j, bj) in basis.iter().enumerate() {
            let mut acc = 0.0;
            for a in 0..dim {
                for b in 0..dim {
                    acc += bi[a] * m[(a, b)] * bj[b];
                }
            }
            out[(i, j)] = acc;
        }
    }
    out
}

fn restrict_c(m: &CMat, basis: &[Vec<f64>]) -> CMat {
    let r = basis.len();
    let dim = m.nrows();
    let mut out = CMat::zeros(r, r);
    for (i, bi) in basis.iter().enumerate() {
        for (j, bj) in basis.iter().enumerate() {
            let mut acc = Complex64::new(0.0, 0.0);
            for a in 0..dim {
                for b in 0..dim {
                    acc += m[(a, b)] * Complex64::new(bi[a] * bj[b], 0.0);
                }
            }
            out[(i, j)] = acc;
        }
    }
    out
}

impl JEvaluator {
    pub fn new(
        alg: &ReductiveAlgebra,
        sigma: &Automorphism,
        sd: &SemisimpleData,
        cz: &CentralizerData,
    ) -> Result<Self> {
        let tau = sigma.power(sd.sigma_power)?;
        let ad_kinv = alg.ad_group(&sd.k.inverse().matrix);
        let g0 = &ad_kinv * &tau.algebra_matrix;

        // Ad(γσ) = Ad(e^a)·Ad(k^{-1})·σ restricted to the complement of z(a)
        let ad_expa = alg.ad_group(&crate::liecore::GroupElement::new(
            alg.exp_vec(&sd.a),
            alg.name.clone(),
        ).matrix);
        let ad_gamma_sigma = &ad_expa * &g0;
        let prefactor = if cz.basis_z0_perp_amb.is_empty() {
            1.0
        } else {
            let block = restrict(&ad_gamma_sigma, &cz.basis_z0_perp_amb);
            let r = block.nrows();
            let d = (DMatrix::<f64>::identity(r, r) - block).determinant().abs();
            if d < 1e-14 {
                return Err(Error::NumericContract(
                    "det(1-Ad(γσ)) on z_0^⊥ vanishes".into(),
                ));
            }
            1.0 / d.sqrt()
        };

        let det_on = |basis: &[Vec<f64>]| -> f64 {
            if basis.is_empty() {
                return 1.0;
            }
            let b = restrict(&g0, basis);
            let r = b.nrows();
            (DMatrix::<f64>::identity(r, r) - b).determinant()
        };
        let det_p0 = det_on(&cz.basis_p_perp0);
        let det_k0 = det_on(&cz.basis_k_perp0);
        if det_p0 <= 0.0 || det_k0 <= 0.0 {
            return Err(Error::Invariant(format!(
                "det(1-Ad(k⁻¹σ)) on the σ-complements must be positive: {det_p0:.3e}, {det_k0:.3e}"
            )));
        }

        Ok(JEvaluator {
            alg: alg.clone(),
            sd: sd.clone(),
            cz: cz.clone(),
            g0,
            prefactor,
            det_p0,
            det_k0,
            branch_steps: 64,
            branch_eps: 1e-10,
        })
    }

    /// Embed k_σ(γ)-coordinates into ambient algebra coordinates.
    pub fn embed_y(&self, y: &[f64]) -> Vec<f64> {
        crate::symspace::embed_in(&self.cz.basis_k_sigma, y, self.alg.dim())
    }

    /// det(1 - e^{-i s ad Y} Ad(k⁻¹σ)) restricted to a subspace, as a
    /// function of the homotopy parameter s.
    fn det_fun(&self, y_amb: &[f64], basis: &[Vec<f64>]) -> impl Fn(f64) -> Complex64 + '_ {
        let ad_y = restrict(&self.alg.ad(y_amb), basis);
        let g_res = restrict(&self.g0, basis);
        let r = basis.len();
        move |s: f64| {
            if r == 0 {
                return Complex64::new(1.0, 0.0);
            }
            let scaled = to_complex(&ad_y).map(|x| x * Complex64::new(0.0, -s));
            let e = expm(&scaled);
            let m = &e * to_complex(&g_res);
            det(&(CMat::identity(r, r) - m))
        }
    }

    /// The tracked square root of the bracket in J at Y (k_σ(γ)-coordinates).
    ///
    /// Value at Y = 0 is 1/det(1-Ad(k⁻¹σ))|_{p^⊥_{σ,0}} > 0. On a branch
    /// failure the evaluation is retried once with Y jittered by
    /// 1e-6·(1+|Y|) in a fixed direction.
    pub fn analytic_sqrt_bracket(&self, y: &[f64]) -> Result<Complex64> {
        match self.try_sqrt_bracket(y) {
            Ok(v) => Ok(v),
            Err(Error::BranchFailure(_)) => {
                let jittered: Vec<f64> = y
                    .iter()
                    .enumerate()
                    .map(|(i, v)| v + 1e-6 * (1.0 + v.abs()) * if i % 2 == 0 { 1.0 } else { -1.0 })
                    .collect();
                self.try_sqrt_bracket(&jittered)
            }
            Err(e) => Err(e),
        }
    }

    fn try_sqrt_bracket(&self, y: &[f64]) -> Result<Complex64> {
        let y_amb = self.embed_y(y);
        // tracked square roots of det_V(s)·det_V(0), seeded at det_V(0) > 0
        let fk = self.det_fun(&y_amb, &self.cz.basis_k_perp0);
        let fp = self.det_fun(&y_amb, &self.cz.basis_p_perp0);
        let dk0 = Complex64::new(self.det_k0, 0.0);
        let dp0 = Complex64::new(self.det_p0, 0.0);
        let u = track_sqrt(
            &|s| fk(s) * dk0,
            dk0,
            self.branch_steps,
            self.branch_eps,
        )?;
        let v = track_sqrt(
            &|s| fp(s) * dp0,
            dp0,
            self.branch_steps,
            self.branch_eps,
        )?;
        // bracket^{1/2} = u/(det_k0 · v)
        Ok(u / (dk0 * v))
    }

    /// J_{γσ}(Y) for Y in k_σ(γ)-coordinates.
    pub fn j_function(&self, y: &[f64]) -> Result<Complex64> {
        let y_amb = self.embed_y(y);
        let ad_y = self.alg.ad(&y_amb);
        let i = Complex64::new(0.0, 1.0);
        let ahat_p = a_hat(&restrict_c(
            &to_complex(&ad_y).map(|x| x * i),
            &self.cz.basis_p_sigma,
        ))?;
        let ahat_k = a_hat(&restrict_c(
            &to_complex(&ad_y).map(|x| x * i),
            &self.cz.basis_k_sigma,
        ))?;
        let bracket = self.analytic_sqrt_bracket(y)?;
        Ok(bracket * Complex64::new(self.prefactor * ahat_p / ahat_k, 0.0))
    }

    /// det(1 - e^{-i ad Y} Ad(k⁻¹σ)) on all of p ⊗ C at the full Y (s = 1),
    /// used by the spinor supertrace.
    pub fn det_p_full(&self, y: &[f64], s: f64) -> Complex64 {
        let dim = self.alg.dim();
        let p_basis: Vec<Vec<f64>> = (0..self.alg.dim_p)
            .map(|i| {
                let mut v = vec![0.0; dim];
                v[i] = 1.0;
                v
            })
            .collect();
        let y_amb = self.embed_y(y);
        (self.det_fun(&y_amb, &p_basis))(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liecore::{build_catalog, Automorphism, GroupElement, TwistedElement};
    use crate::symspace::{
        semisimple_decompose, twisted_centralizer, MinimizerOptions, SpacePoint,
    };

    fn setup(name: &str, p: &[f64], k: &[f64]) -> JEvaluator {
        let alg = build_catalog(name, 1.0).unwrap();
        let sigma = Automorphism::identity(&alg);
        let g = alg.exp_vec(p) * alg.exp_vec(k);
        let te = TwistedElement::new(GroupElement::new(g, name), 1);
        let sd = semisimple_decompose(
            &alg,
            &sigma,
            &te,
            &SpacePoint::basepoint(&alg),
            MinimizerOptions::default(),
        )
        .unwrap();
        let cz = twisted_centralizer(&alg, &sigma, &sd).unwrap();
        JEvaluator::new(&alg, &sigma, &sd, &cz).unwrap()
    }

    #[test]
    fn a_hat_basics() {
        // Â(0) = 1
        assert!((a_hat(&CMat::zeros(3, 3)).unwrap() - 1.0).abs() < 1e-14);
        // Hermitian eigenvalues ±θ from i·ad(Y)|p in sl2r: value (θ/2)/sinh(θ/2)
        let alg = build_catalog("sl2r", 1.0).unwrap();
        let y = vec![0.0, 0.0, 0.9];
        let ady = alg.ad(&y);
        let m = to_complex(&ady).map(|x| x * Complex64::new(0.0, 1.0));
        let block = restrict_c(&m, &[vec![1., 0., 0.], vec![0., 1., 0.]]);
        let th = 0.9 * 2f64.sqrt();
        let expect = (th / 2.0) / (th / 2.0).sinh();
        assert!((a_hat(&block).unwrap() - expect).abs() < 1e-12);
        // evenness
        let block_neg = block.map(|x| -x);
        assert!((a_hat(&block_neg).unwrap() - expect).abs() < 1e-12);
    }

    #[test]
    fn identity_class_j_is_ahat_ratio() {
        let je = setup("sl2r", &[0.0; 3], &[0.0; 3]);
        // γ = 1, σ = id: J(Y) = Â(i ad Y|p)/Â(i ad Y|k); for sl2r the k-part
        // is abelian, so J(y·e₃) = (y/√2)/sinh(y/√2)
        for &y in &[0.5, 1.3, -0.8] {
            let j = je.j_function(&[y]).unwrap();
            let u = y / 2f64.sqrt();
            let expect = u / u.sinh();
            assert!((j.re - expect).abs() < 1e-11, "{} vs {}", j.re, expect);
            assert!(j.im.abs() < 1e-12);
        }
    }

    #[test]
    fn sqrt_bracket_at_zero_and_squaring() {
        let phi: f64 = 0.7;
        let je = setup("sl2r", &[0.0; 3], &[0.0, 0.0, phi * 2f64.sqrt()]);
        // at Y=0: 1/det(1-Ad(k⁻¹))|_{p} = 1/(4 sin²φ)
        let b0 = je.analytic_sqrt_bracket(&[0.0]).unwrap();
        let expect = 1.0 / (4.0 * phi.sin().powi(2));
        assert!((b0.re - expect).abs() < 1e-10 * expect);
        // squaring oracle at random Y
        for &y in &[0.4, -1.1] {
            let b = je.analytic_sqrt_bracket(&[y]).unwrap();
            let y_amb = je.embed_y(&[y]);
            let dk = (je.det_fun(&y_amb, &je.cz.basis_k_perp0))(1.0);
            let dp = (je.det_fun(&y_amb, &je.cz.basis_p_perp0))(1.0);
            let target = dk / (Complex64::new(je.det_p0 * je.det_k0, 0.0) * dp);
            assert!((b * b - target).norm() < 1e-9 * target.norm().max(1.0));
        }
    }

    #[test]
    fn elliptic_j_closed_form() {
        // J(y) = 1/(4i sinφ sinh(y/√2 - iφ)) for the rotation class
        let phi: f64 = 0.7;
        let je = setup("sl2r", &[0.0; 3], &[0.0, 0.0, phi * 2f64.sqrt()]);
        for &y in &[0.0, 0.6, -1.2] {
            let j = je.j_function(&[y]).unwrap();
            let w = Complex64::new(y / 2f64.sqrt(), -phi);
            let oracle = Complex64::new(1.0, 0.0)
                / (Complex64::new(0.0, 4.0 * phi.sin()) * w.sinh());
            assert!((j - oracle).norm() < 1e-10 * oracle.norm(), "{j} vs {oracle}");
        }
    }

    #[test]
    fn hyperbolic_prefactor() {
        // hyperbolic length ℓ_B: |det(1-Ad(γ))|_{z_0^⊥}|^{1/2} = 2 sinh(ℓ_B/√2·…)
        // with ad(a)-eigenvalues ±√2·ℓ_B on the complement.
        let l: f64 = 0.8; // a = l·e₁
        let je = setup("sl2r", &[l, 0.0, 0.0], &[0.0; 3]);
        let j0 = je.j_function(&[]).unwrap();
        // eigenvalues of ad(a) on z_0^⊥ are ±√2 l, so
        // |det(1-e^{ad a})| = |(1-e^{√2 l})(1-e^{-√2 l})| = 4 sinh²(l/√2)
        let oracle = 1.0 / (2.0 * (l / 2f64.sqrt()).sinh());
        assert!((j0.re - oracle).abs() < 1e-10 * oracle, "{} vs {}", j0.re, oracle);
    }

    #[test]
    fn j_invariance_under_torus_rotation() {
        // |J(Ad(h)Y) - J(Y)| small for h in the compact part of the
        // centralizer (here the rotation torus itself, acting trivially on
        // its own Lie algebra — use sl2c γ=1 where the action is nontrivial).
        let alg = build_catalog("sl2c_real", 1.0).unwrap();
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
        let je = JEvaluator::new(&alg, &sigma, &sd, &cz).unwrap();
        let y = [0.3, -0.5, 0.7];
        let j1 = je.j_function(&y).unwrap();
        // rotate Y by Ad(exp(s)) with s in k_σ(γ)
        let s_amb = je.embed_y(&[0.2, 0.4, -0.1]);
        let h = alg.exp_vec(&s_amb);
        let ad_h = alg.ad_group(&h);
        let y_amb = je.embed_y(&y);
        let rotated = &ad_h * nalgebra::DVector::from_column_slice(&y_amb);
        let y_rot: Vec<f64> = cz
            .basis_k_sigma
            .iter()
            .map(|b| b.iter().zip(rotated.iter()).map(|(x, y)| x * y).sum())
            .collect();
        let j2 = je.j_function(&y_rot).unwrap();
        assert!((j1 - j2).norm() < 1e-9 * j1.norm().max(1.0));
    }
}
