//! The forms e_t and d_t as Berezin integrals of exp(-σ(A_t²)) against a
//! Duistermaat–Heckman orbit function:
//!
//!   σ(A_t²) = -½⟨ω^{p,2}, β²⟩' - ω^{p,2} + t|β|² + t β²,
//!
//! with ω^{p,2} = Σ_{i<j} e^i e^j [p_i,p_j], β² = Σ_{i<j} ê^i ê^j [p_i,p_j],
//! |β|² = Δ^p. The k-valued coefficients act on the orbit integrand through
//! 2πi⟨μ,·⟩ insertions and |β|² through 4π²|⟨μ,iβ⟩|².
//!
//! The d_t prefactor √t(ω^p ∧ β)/2 acts through second-order moment
//! insertions 4π²⟨μ,i·p_i⟩⟨μ,i·p_j⟩; the tests pin this against the
//! transgression relation (1+2t∂_t)[e_t]^max = [d_t]^max and a hand-derived
//! closed form on the CP¹ orbit.

use num_complex::Complex64;

use super::exterior::ExteriorElement;
use super::orbit::{u_coords, OrbitModel, OrbitPoint};
use crate::error::{Error, Result};
use crate::liecore::ReductiveAlgebra;
use crate::reps::CompactForm;

/// Pairing data of the p-basis of a class against the compact form:
/// coordinates of i·p_i and of [p_i, p_j] in the u-onb.
pub struct SigmaA2Terms {
    pub p: usize,
    /// u-coordinates of i·p_i.
    pub ip_u: Vec<Vec<f64>>,
    /// u-coordinates of [p_i, p_j], flattened over i < j.
    pub bracket_u: Vec<((usize, usize), Vec<f64>)>,
    /// ⟨[p_i,p_j],[p_k,p_l]⟩ with the algebra scalar product.
    pub pairing: Vec<(((usize, usize), (usize, usize)), f64)>,
}

/// Assemble the μ-independent pieces of σ(A_t²) for a p-basis.
pub fn sigma_a2_terms(
    alg: &ReductiveAlgebra,
    u: &CompactForm,
    p_basis: &[Vec<f64>],
) -> Result<SigmaA2Terms> {
    let p = p_basis.len();
    if p > 3 {
        return Err(Error::InvalidInput(format!(
            "exterior engine bounded at p ≤ 3, got {p}"
        )));
    }
    let dim = alg.dim();
    let mut ip_u = Vec::with_capacity(p);
    for b in p_basis {
        ip_u.push(u_coords(alg, u, &vec![0.0; dim], b));
    }
    let mut bracket_u = Vec::new();
    let mut brackets = Vec::new();
    for i in 0..p {
        for j in (i + 1)..p {
            let br = alg.bracket(&p_basis[i], &p_basis[j]);
            bracket_u.push(((i, j), u_coords(alg, u, &br, &vec![0.0; dim])));
            brackets.push(((i, j), br));
        }
    }
    let mut pairing = Vec::new();
    for (ij, bij) in &brackets {
        for (kl, bkl) in &brackets {
            let v = alg.inner(bij, bkl);
            if v.abs() > 1e-14 {
                pairing.push(((*ij, *kl), v));
            }
        }
    }
    Ok(SigmaA2Terms { p, ip_u, bracket_u, pairing })
}

/// [e_t]^max and [d_t]^max of an orbit model.
#[derive(Debug, Clone, Copy)]
pub struct EtDt {
    pub e_t_max: f64,
    pub d_t_max: f64,
}

fn two_form(p: usize, i: usize, j: usize, hatted: bool) -> ExteriorElement {
    if hatted {
        ExteriorElement::e_hat(p, i).mul(&ExteriorElement::e_hat(p, j))
    } else {
        ExteriorElement::e(p, i).mul(&ExteriorElement::e(p, j))
    }
}

/// Evaluate [e_t]^max and [d_t]^max at heat parameter t.
pub fn et_dt(terms: &SigmaA2Terms, orbit: &OrbitModel, t: f64) -> Result<EtDt> {
    if t <= 0.0 {
        return Err(Error::InvalidInput("t must be positive".into()));
    }
    let p = terms.p;
    let one = Complex64::new(1.0, 0.0);
    let two_pi_i = Complex64::new(0.0, 2.0 * std::f64::consts::PI);

    // μ-independent quartic term +½⟨ω², β²⟩' of exp(-σA²)
    let mut quartic = ExteriorElement::zero(p);
    for ((ij, kl), v) in &terms.pairing {
        let f = two_form(p, ij.0, ij.1, false).mul(&two_form(p, kl.0, kl.1, true));
        quartic = quartic.add(&f.scale(Complex64::new(*v, 0.0)));
    }

    let berezin_norm = {
        let par = (p * (p + 1) / 2) % 2;
        let sign = if par == 0 { 1.0 } else { -1.0 };
        sign / std::f64::consts::PI.powf(p as f64 / 2.0)
    };

    let mut e_acc = Complex64::new(0.0, 0.0);
    let mut d_acc = Complex64::new(0.0, 0.0);
    for pt in &orbit.points {
        let (nil, scalar, a_vals) = exponent_at(terms, orbit, pt, t, &quartic, two_pi_i);
        let expn = nil.exp();
        // e_t: prefactor L/(4√t) = Σ e^i ê^i / (4√t)
        let mut l_form = ExteriorElement::zero(p);
        for i in 0..p {
            l_form = l_form.add(&ExteriorElement::e(p, i).mul(&ExteriorElement::e_hat(p, i)));
        }
        let e_term = l_form
            .scale(one / Complex64::new(4.0 * t.sqrt(), 0.0))
            .mul(&expn);
        // d_t: prefactor √t(ω ∧ β)/2 with insertions 4π² a_i a_j
        let mut d_pref = ExteriorElement::zero(p);
        for i in 0..p {
            for j in 0..p {
                let c = 2.0 * std::f64::consts::PI.powi(2) * t.sqrt() * a_vals[i] * a_vals[j];
                if c != 0.0 {
                    let f = ExteriorElement::e(p, i).mul(&ExteriorElement::e_hat(p, j));
                    d_pref = d_pref.add(&f.scale(Complex64::new(c, 0.0)));
                }
            }
        }
        let d_term = d_pref.mul(&expn);
        let w = Complex64::new(pt.weight * scalar, 0.0);
        e_acc += e_term.full_top_coeff() * w;
        d_acc += d_term.full_top_coeff() * w;
    }
    let e_t_max = e_acc * Complex64::new(berezin_norm, 0.0);
    let d_t_max = d_acc * Complex64::new(-berezin_norm, 0.0);
    if e_t_max.im.abs() > 1e-9 * (1.0 + e_t_max.norm())
        || d_t_max.im.abs() > 1e-9 * (1.0 + d_t_max.norm())
    {
        return Err(Error::NumericContract(format!(
            "e_t/d_t not real: {e_t_max} / {d_t_max}"
        )));
    }
    Ok(EtDt { e_t_max: e_t_max.re, d_t_max: d_t_max.re })
}

/// Nilpotent exponent of exp(-σ(A_t²)) at an orbit point, the scalar
/// Gaussian damping, and the moment values a_i = ⟨μ, i·p_i⟩.
fn exponent_at(
    terms: &SigmaA2Terms,
    orbit: &OrbitModel,
    pt: &OrbitPoint,
    t: f64,
    quartic: &ExteriorElement,
    two_pi_i: Complex64,
) -> (ExteriorElement, f64, Vec<f64>) {
    let p = terms.p;
    let mut nil = quartic.clone();
    for ((i, j), bu) in &terms.bracket_u {
        let m = orbit.pair(pt, bu);
        if m == 0.0 {
            continue;
        }
        // +ω²-insertion on the unhatted pair, -t·β² on the hatted pair
        nil = nil.add(&two_form(p, *i, *j, false).scale(two_pi_i * Complex64::new(m, 0.0)));
        nil = nil.add(
            &two_form(p, *i, *j, true).scale(two_pi_i * Complex64::new(-t * m, 0.0)),
        );
    }
    let a_vals: Vec<f64> = terms.ip_u.iter().map(|ip| orbit.pair(pt, ip)).collect();
    let a2: f64 = a_vals.iter().map(|a| a * a).sum();
    let scalar = (-4.0 * std::f64::consts::PI.powi(2) * t * a2).exp();
    (nil, scalar, a_vals)
}
