//! Lefschetz-side densities for elliptic classes: the equivariant
//! Â·ch index density and the Euler form maximum, evaluated by
//! exterior-algebra arithmetic over Λ(p_σ(γ)*) with the curvature
//! Ω = -½[ω^{p_σ}, ω^{p_σ}], i.e. Ω(u,v) = -[u,v] ∈ k_σ(γ).
//!
//! Conventions (pinned against the heat side, see the acceptance suite):
//! every curvature enters through the substitution -iρ(Y) ↦ (i/2π)ρ(Ω);
//! the Chern character is Tr[ρ(k⁻¹σ) exp(-R^F/2πi)] and the Â-form is
//! det^{1/2} g(-(R/2π)²) with g(x²) = (x/2)/sinh(x/2).

use num_complex::Complex64;

use super::dirac::CliffordModel;
use super::jfunc::JEvaluator;
use crate::error::{Error, Result};
use crate::liecore::ReductiveAlgebra;
use crate::numerics::matfun::RMat;
use crate::reps::Irrep;
use crate::torsion::exterior::{even, ExteriorElement};

type Form = ExteriorElement;
type FormMat = Vec<Vec<Form>>;

fn form_scalar(r: usize, c: Complex64) -> Form {
    ExteriorElement::scalar(r, c)
}

fn zero_mat(r: usize, n: usize) -> FormMat {
    vec![vec![ExteriorElement::zero(r); n]; n]
}

fn identity_mat(r: usize, n: usize) -> FormMat {
    let mut m = zero_mat(r, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = form_scalar(r, Complex64::new(1.0, 0.0));
    }
    m
}

fn mat_mul(a: &FormMat, b: &FormMat) -> FormMat {
    let n = a.len();
    let r = a[0][0].r;
    let mut out = zero_mat(r, n);
    for i in 0..n {
        for j in 0..n {
            let mut acc = ExteriorElement::zero(r);
            for k in 0..n {
                acc = acc.add(&a[i][k].mul(&b[k][j]));
            }
            out[i][j] = acc;
        }
    }
    out
}

fn mat_add(a: &FormMat, b: &FormMat) -> FormMat {
    a.iter()
        .zip(b)
        .map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| x.add(y)).collect())
        .collect()
}

fn mat_scale(a: &FormMat, c: Complex64) -> FormMat {
    a.iter()
        .map(|row| row.iter().map(|x| x.scale(c)).collect())
        .collect()
}

/// exp of a form-matrix whose entries have no scalar part (nilpotent): the
/// series terminates at the top exterior degree.
fn mat_exp_nilpotent(a: &FormMat) -> FormMat {
    let n = a.len();
    let r = a[0][0].r;
    let mut out = identity_mat(r, n);
    let mut term = identity_mat(r, n);
    for k in 1..=(r + 1) {
        term = mat_mul(&term, a);
        term = mat_scale(&term, Complex64::new(1.0 / k as f64, 0.0));
        let vanished = term
            .iter()
            .all(|row| row.iter().all(|e| e.coeff.iter().all(|c| c.norm_sqr() == 0.0)));
        if vanished {
            break;
        }
        out = mat_add(&out, &term);
    }
    out
}

/// Result of a density evaluation with the orientation/sign convention flag.
#[derive(Debug, Clone)]
pub struct DensityResult {
    pub value: Complex64,
    /// The sign convention is fixed by continuity from the Clifford model at
    /// Y = 0 and the ordered orientation of basis_p_sigma; flips of either
    /// convention negate the value.
    pub sign_convention: &'static str,
}

/// The curvature 2-form matrix (i/2π)·ad(Ω) restricted to a subspace, as a
/// matrix of 2-forms over Λ(p_σ(γ)*).
fn curvature_action(
    alg: &ReductiveAlgebra,
    je: &JEvaluator,
    target: &[Vec<f64>],
    scale: Complex64,
) -> FormMat {
    let p = je.cz.p;
    let n = target.len();
    let mut out = zero_mat(p, n);
    for a in 0..p {
        for b in (a + 1)..p {
            // Ω(p_a, p_b) = -[p_a, p_b]
            let omega = alg
                .bracket(&je.cz.basis_p_sigma[a], &je.cz.basis_p_sigma[b])
                .iter()
                .map(|x| -x)
                .collect::<Vec<f64>>();
            let ad_omega = alg.ad(&omega);
            let two_form = ExteriorElement::e(p, a).mul(&ExteriorElement::e(p, b));
            for (i, ti) in target.iter().enumerate() {
                for (j, tj) in target.iter().enumerate() {
                    // ⟨ad(Ω_ab) t_j, t_i⟩
                    let mut acc = 0.0;
                    for x in 0..alg.dim() {
                        for y in 0..alg.dim() {
                            acc += ti[x] * ad_omega[(x, y)] * tj[y];
                        }
                    }
                    if acc != 0.0 {
                        out[i][j] =
                            out[i][j].add(&two_form.scale(scale * Complex64::new(acc, 0.0)));
                    }
                }
            }
        }
    }
    out
}

/// [e(TX(γσ))]^max: the Pfaffian of R^{TX(γσ)}/2π in the ordered frame of
/// basis_p_sigma; identically zero for odd p, one for a point.
pub fn euler_max(alg: &ReductiveAlgebra, je: &JEvaluator) -> Result<f64> {
    let p = je.cz.p;
    if p == 0 {
        return Ok(1.0);
    }
    if p % 2 == 1 {
        return Ok(0.0);
    }
    // R(·,·) = ad(Ω(·,·)) on p_σ(γ): assemble the antisymmetric form-matrix
    let scale = Complex64::new(1.0 / (2.0 * std::f64::consts::PI), 0.0);
    let r_mat = curvature_action(alg, je, &je.cz.basis_p_sigma, scale);
    let pf = even::pfaffian(&r_mat);
    let top = pf.e_top_coeff();
    if top.im.abs() > 1e-9 * (1.0 + top.norm()) {
        return Err(Error::Invariant("Euler density came out complex".into()));
    }
    Ok(top.re)
}

/// Equivariant index density [Â^{γσ}(TX|_{X(γσ)}) ch^{γσ}(F)]^max for an
/// elliptic class, with the normal-bundle factor
/// Tr_s^{S(p^⊥)}-seeded square root / det(1 - Ad(k⁻¹σ)e^{(i/2π)adΩ})|_{p^⊥}.
pub fn elliptic_index_density(
    alg: &ReductiveAlgebra,
    je: &JEvaluator,
    irrep: &Irrep,
) -> Result<DensityResult> {
    if alg.dim_p % 2 != 0 {
        return Err(Error::InvalidInput("index density needs even dim p".into()));
    }
    if je.sd.m_gamma_sigma > 1e-9 {
        return Err(Error::InvalidInput("index density needs an elliptic class".into()));
    }
    let p = je.cz.p;
    let one = Complex64::new(1.0, 0.0);
    let i_over_2pi = Complex64::new(0.0, 1.0 / (2.0 * std::f64::consts::PI));

    // Â(TX(γσ)): det^{1/2} g(-(R/2π)²) with g(s) = (√s/2)/sinh(√s/2)
    let ahat = if p == 0 {
        form_scalar(p, one)
    } else {
        let r_over_2pi = curvature_action(
            alg,
            je,
            &je.cz.basis_p_sigma,
            Complex64::new(1.0 / (2.0 * std::f64::consts::PI), 0.0),
        );
        let r2 = mat_scale(&mat_mul(&r_over_2pi, &r_over_2pi), Complex64::new(-1.0, 0.0));
        // g(s) = 1 - s/24 + 7 s²/5760 - 31 s³/967680 + …
        let coeffs = [1.0, -1.0 / 24.0, 7.0 / 5760.0, -31.0 / 967680.0];
        let mut g = identity_mat(p, p);
        let mut pw = identity_mat(p, p);
        for (k, &c) in coeffs.iter().enumerate().skip(1) {
            pw = mat_mul(&pw, &r2);
            if k * 4 > 2 * p {
                break;
            }
            g = mat_add(&g, &mat_scale(&pw, Complex64::new(c, 0.0)));
        }
        let det_g = even::det(&g);
        even::sqrt(&det_g, det_g.coeff[0].sqrt())
    };

    // normal factor: N/D on p^⊥_σ(γ)
    let perp = &je.cz.basis_p_perp;
    let normal = if perp.is_empty() {
        form_scalar(p, one)
    } else {
        // D = det(1 - G₀·exp((i/2π) ad Ω))|_{p^⊥}
        let curv = curvature_action(alg, je, perp, i_over_2pi);
        let e_form = mat_exp_nilpotent(&curv);
        let n = perp.len();
        let mut g0_perp = zero_mat(p, n);
        for (i, bi) in perp.iter().enumerate() {
            for (j, bj) in perp.iter().enumerate() {
                let mut acc = 0.0;
                for x in 0..alg.dim() {
                    for y in 0..alg.dim() {
                        acc += bi[x] * je.g0[(x, y)] * bj[y];
                    }
                }
                g0_perp[i][j] = form_scalar(p, Complex64::new(acc, 0.0));
            }
        }
        let prod = mat_mul(&g0_perp, &e_form);
        let one_minus = mat_add(&identity_mat(p, n), &mat_scale(&prod, -one));
        let d_form = even::det(&one_minus);
        // seed: Tr_s^{S(p^⊥)}[ρ^{S}(k⁻¹σ)|_{p^⊥}] from the Clifford model on p^⊥
        let seed = normal_spin_seed(alg, je)?;
        // N² = (-1)^{(m-p)/2} D, so sqrt of ±D with the Clifford branch
        let par = if ((alg.dim_p - p) / 2) % 2 == 0 { one } else { -one };
        let signed = d_form.scale(par);
        let n_form = even::sqrt(&signed, seed);
        // ν = N/D = (±1)·1/N computed stably as N·D^{-1}
        let d_inv = even_inverse(&d_form)?;
        n_form.mul(&d_inv)
    };

    // ch^{γσ}(F) = Tr[ρ(k⁻¹σ) exp(-R^F/2πi)], R^F = ρ^E(Ω)
    let ch = {
        let n = irrep.dim;
        let mut rf = zero_mat(p, n);
        for a in 0..p {
            for b in (a + 1)..p {
                let omega: Vec<f64> = alg
                    .bracket(&je.cz.basis_p_sigma[a], &je.cz.basis_p_sigma[b])
                    .iter()
                    .map(|x| -x)
                    .collect();
                let rho_omega = irrep.rho(&omega);
                let two_form = ExteriorElement::e(p, a).mul(&ExteriorElement::e(p, b));
                for i in 0..n {
                    for j in 0..n {
                        let c = rho_omega[(i, j)] * i_over_2pi; // -(1/2πi) = +i/2π
                        if c.norm() > 0.0 {
                            out_add(&mut rf[i][j], &two_form, c);
                        }
                    }
                }
            }
        }
        let e_form = mat_exp_nilpotent(&rf);
        let rho_ks = irrep.rho_group(&je.sd.k.inverse()) * &irrep.rho_sigma;
        // trace of ρ(k⁻¹σ)·e_form
        let mut tr = ExteriorElement::zero(p);
        for i in 0..n {
            for j in 0..n {
                if rho_ks[(i, j)].norm() > 0.0 {
                    tr = tr.add(&e_form[j][i].scale(rho_ks[(i, j)]));
                }
            }
        }
        tr
    };

    let total = ahat.mul(&normal).mul(&ch);
    let value = if p == 0 {
        total.coeff[0]
    } else {
        total.e_top_coeff()
    };
    Ok(DensityResult { value, sign_convention: "clifford-continuity/ordered-p-sigma-frame" })
}

fn out_add(target: &mut Form, two_form: &Form, c: Complex64) {
    *target = target.add(&two_form.scale(c));
}

/// Inverse of an even form with nonvanishing scalar part.
fn even_inverse(a: &Form) -> Result<Form> {
    let s = a.coeff[0];
    if s.norm() < 1e-300 {
        return Err(Error::NumericContract("even form not invertible".into()));
    }
    let mut nil = a.scale(Complex64::new(1.0, 0.0) / s);
    nil.coeff[0] = Complex64::new(0.0, 0.0);
    // (1+x)^{-1} = Σ (-x)^k
    let mut out = ExteriorElement::scalar(a.r, Complex64::new(1.0, 0.0));
    let mut term = ExteriorElement::scalar(a.r, Complex64::new(1.0, 0.0));
    for _ in 1..=(a.r + 1) {
        term = term.mul(&nil).scale(Complex64::new(-1.0, 0.0));
        if term.coeff.iter().all(|c| c.norm_sqr() == 0.0) {
            break;
        }
        out = out.add(&term);
    }
    Ok(out.scale(Complex64::new(1.0, 0.0) / s))
}

/// Tr_s of ρ^{S(p^⊥)}(k⁻¹σ) from a Clifford model on the normal space.
fn normal_spin_seed(alg: &ReductiveAlgebra, je: &JEvaluator) -> Result<Complex64> {
    let perp = &je.cz.basis_p_perp;
    let n = perp.len();
    if n == 0 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    if n % 2 != 0 {
        return Err(Error::InvalidInput(
            "normal space odd-dimensional: orientation-incompatible σ".into(),
        ));
    }
    // restriction of Ad(k⁻¹σ) to p^⊥ in its orthonormal frame
    let mut g = RMat::zeros(n, n);
    for (i, bi) in perp.iter().enumerate() {
        for (j, bj) in perp.iter().enumerate() {
            let mut acc = 0.0;
            for x in 0..alg.dim() {
                for y in 0..alg.dim() {
                    acc += bi[x] * je.g0[(x, y)] * bj[y];
                }
            }
            g[(i, j)] = acc;
        }
    }
    if g.determinant() < 0.0 {
        return Err(Error::InvalidInput(
            "σ reverses the normal orientation: sign flag undefined".into(),
        ));
    }
    let model = CliffordModel::new(n)?;
    let log = super::dirac::so_log_pub(&g)?;
    Ok(model.supertrace_exp(&log))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liecore::{build_catalog, Automorphism, GroupElement, GroupMap, TwistedElement};
    use crate::reps::build_sym_irrep;
    use crate::symspace::{
        semisimple_decompose, twisted_centralizer, MinimizerOptions, SpacePoint,
    };

    fn make(
        name: &str,
        sigma: &Automorphism,
        k: &[f64],
    ) -> (ReductiveAlgebra, JEvaluator) {
        let alg = build_catalog(name, 1.0).unwrap();
        let te = TwistedElement::new(GroupElement::new(alg.exp_vec(k), name), 1);
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
    fn euler_point_and_odd() {
        let alg = build_catalog("sl2r", 1.0).unwrap();
        let sigma = Automorphism::identity(&alg);
        // rotation: X(γσ) a point → 1
        let (alg2, je) = make("sl2r", &sigma, &[0.0, 0.0, 0.9]);
        assert_eq!(euler_max(&alg2, &je).unwrap(), 1.0);
        // hyperbolic: p = 1 odd → 0
        let te = TwistedElement::new(
            GroupElement::new(alg.exp_vec(&[0.7, 0.0, 0.0]), "sl2r"),
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
        let je2 = JEvaluator::new(&alg, &sigma, &sd, &cz).unwrap();
        assert_eq!(euler_max(&alg, &je2).unwrap(), 0.0);
    }

    #[test]
    fn euler_h2_gauss_bonnet() {
        // X(γσ) = H² (curvature -2) for γ=1, σ = conj on sl2c_real:
        // [e]^max = K/2π = -1/π up to the frame orientation
        let alg = build_catalog("sl2c_real", 1.0).unwrap();
        let sigma = Automorphism::new(&alg, GroupMap::ComplexConj).unwrap();
        let (alg, je) = make("sl2c_real", &sigma, &[0.0; 6]);
        let e = euler_max(&alg, &je).unwrap();
        assert!(
            (e.abs() - 1.0 / std::f64::consts::PI).abs() < 1e-10,
            "euler {e}"
        );
    }

    #[test]
    fn index_density_identity_class_sl2r() {
        // γ = 1 on sl2r with a weight-w coefficient bundle: density = w/2π.
        // Sym^d of the defining rep restricted to SO(2) has weights
        // {d, d-2, …}: use the K^σ-trivial part via d = 0 → density 0, and
        // cross-check the heat side elsewhere; here pin the ch-normalisation
        // through Sym¹ whose K-weights are ±1: the supertrace-free density
        // for the FULL Sym¹ sums the two weights to 0.
        let alg = build_catalog("sl2r", 1.0).unwrap();
        let sigma = Automorphism::identity(&alg);
        let (alg, je) = make("sl2r", &sigma, &[0.0; 3]);
        let triv = build_sym_irrep(&alg, 0, &sigma).unwrap();
        let d0 = elliptic_index_density(&alg, &je, &triv).unwrap();
        assert!(d0.value.norm() < 1e-12, "trivial-E density {}", d0.value);
        let def = build_sym_irrep(&alg, 1, &sigma).unwrap();
        let d1 = elliptic_index_density(&alg, &je, &def).unwrap();
        assert!(d1.value.norm() < 1e-10, "Sym¹ density {}", d1.value);
    }

    #[test]
    fn index_density_rotation_atiyah_bott() {
        // isolated fixed point: |density| = 1/(2|sin φ|)·dim E factors
        let phi: f64 = 0.9;
        let alg = build_catalog("sl2r", 1.0).unwrap();
        let sigma = Automorphism::identity(&alg);
        let (alg, je) = make("sl2r", &sigma, &[0.0, 0.0, phi * 2f64.sqrt()]);
        let triv = build_sym_irrep(&alg, 0, &sigma).unwrap();
        let d = elliptic_index_density(&alg, &je, &triv).unwrap();
        let expect = 1.0 / (2.0 * phi.sin());
        assert!(
            (d.value.norm() - expect).abs() < 1e-10 * expect,
            "{} vs {}",
            d.value,
            expect
        );
        // purely imaginary in this convention
        assert!(d.value.re.abs() < 1e-10 * d.value.norm());
    }
}
