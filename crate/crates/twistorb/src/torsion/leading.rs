//! Torsion leading terms: the rescaled weighted supertrace asymptotics for
//! dim b_σ(γ) = 1 elliptic classes and the ledger-level assembly
//!
//!   leading(d) = Σ_{E¹σ,max} Vol · Σ_j r_j^d φ_j [W^j]^max,
//!
//! with the nonelliptic contributions carrying exponentially small weight.

use num_complex::Complex64;

use crate::assembly::DecomposedClass;
use crate::error::{Error, Result};
use crate::liecore::{Automorphism, ReductiveAlgebra};
use crate::numerics::fit_slope;
use crate::orbital::{derham_orbital_supertrace, JEvaluator};
use crate::reps::{build_sym_irrep, CompactForm};
use crate::torsion::forms::{et_dt, sigma_a2_terms, SigmaA2Terms};
use crate::torsion::orbit::{catalog, nondegeneracy_check, u_coords, OrbitModel};
use crate::torsion::winv::w_invariant;

/// Error sequence of the rescaled weighted-supertrace asymptotics.
#[derive(Debug, Clone)]
pub struct AsymptoticsErrors {
    pub d_list: Vec<u32>,
    pub eps: Vec<f64>,
    /// sup over the sweep of d·ε_d (bounded when the O(1/d) rate holds).
    pub sup_d_eps: f64,
    pub lhs: Vec<f64>,
    pub rhs: Vec<f64>,
}

/// Orbit data of an elliptic class: the fixed-component models with their
/// phases, for the leading-term assembly.
pub struct ClassOrbitData {
    pub n_gamma: usize,
    /// (r_j, φ_j, component W-data)
    pub components: Vec<(Complex64, Complex64, SigmaA2Terms, OrbitModel)>,
}

/// Build orbit data for an elliptic class of sl2c_real with λ = k·ϖ on the
/// holomorphic factor. γ = 1-type classes carry the whole CP¹ component;
/// rotation classes carry two pole components.
pub fn class_orbit_data(
    alg: &ReductiveAlgebra,
    sigma: &Automorphism,
    dc: &DecomposedClass,
    k_mult: u32,
    grid: usize,
) -> Result<ClassOrbitData> {
    if alg.name != "sl2c_real" {
        return Err(Error::UnknownCatalog(
            "class orbit data implemented for the sl2c_real catalog".into(),
        ));
    }
    if !sigma.is_identity() {
        return Err(Error::UnknownCatalog(
            "torsion leading terms run with σ = id on sl2c_real (see reps for twisted data)"
                .into(),
        ));
    }
    if !dc.sd.is_elliptic() {
        return Err(Error::InvalidInput("orbit data needs an elliptic class".into()));
    }
    let u = CompactForm::new(alg)?;
    let p_basis = dc.cz.basis_p_sigma.clone();

    // the projective action of k⁻¹ on the holomorphic factor CP¹
    let m = dc.sd.k.inverse().matrix.clone();
    let fp = crate::reps::fixed_point_data(&[m], &[k_mult], Complex64::new(1.0, 0.0))?;

    let mut components = Vec::new();
    if fp.n_max == 1 {
        // whole CP¹: the full fundamental orbit of Z⁰_σ(γ) = G
        let orbit = catalog::sl2c_fundamental_orbit(alg, &u, k_mult, grid)?;
        let terms = sigma_a2_terms(alg, &u, &p_basis)?;
        let c = &fp.components[fp.j_max[0]];
        components.push((c.r, c.phi, terms, orbit));
    } else {
        // two poles: point components at μ = ±λ·(axis of the eigenlines)
        let axes = catalog::sl2c_factor1_axes(alg, &u);
        let lam = k_mult as f64 * catalog::fundamental_norm_sl2c(alg);
        // moment direction of an eigenline v: n̂_a = v^H (i G_a) v with G_a
        // the factor su(2) action on C²; for the diagonal-torus catalog
        // classes this lands on ±(third axis of the k-eigenframe).
        for (j, comp) in fp.components.iter().enumerate() {
            let dir = pole_moment_direction(alg, &dc.sd.k.inverse().matrix, j)?;
            let mut mu = vec![0.0; u.basis.len()];
            for (a, ax) in axes.iter().enumerate() {
                for (x, y) in mu.iter_mut().zip(ax) {
                    *x += lam * dir[a] * y;
                }
            }
            let orbit = OrbitModel::point_component(&format!("pole{j}"), mu, lam);
            let terms = sigma_a2_terms(alg, &u, &p_basis)?;
            components.push((comp.r, comp.phi, terms, orbit));
        }
    }
    Ok(ClassOrbitData { n_gamma: fp.n_max, components })
}

/// Moment direction of the j-th eigenline of the 2×2 unitary `m`:
/// n̂_a = v^H (i s_a) v in the Pauli frame of the holomorphic factor.
fn pole_moment_direction(
    alg: &ReductiveAlgebra,
    m: &crate::numerics::matfun::CMat,
    j: usize,
) -> Result<[f64; 3]> {
    let _ = alg;
    let tr = m[(0, 0)] + m[(1, 1)];
    let det = m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)];
    let disc = (tr * tr - det * Complex64::new(4.0, 0.0)).sqrt();
    let l = if j == 0 {
        (tr + disc) * Complex64::new(0.5, 0.0)
    } else {
        (tr - disc) * Complex64::new(0.5, 0.0)
    };
    let a = m[(0, 0)] - l;
    let b = m[(0, 1)];
    let c = m[(1, 0)];
    let d = m[(1, 1)] - l;
    let (v0, v1) = if b.norm() + a.norm() > c.norm() + d.norm() {
        (-b, a)
    } else {
        (-d, c)
    };
    let n2 = v0.norm_sqr() + v1.norm_sqr();
    if n2 < 1e-20 {
        return Err(Error::NumericContract("degenerate eigenline".into()));
    }
    // expectation values of the Pauli matrices
    let sx = 2.0 * (v0.conj() * v1).re / n2;
    let sy = 2.0 * (v0.conj() * v1).im / n2;
    let sz = (v0.norm_sqr() - v1.norm_sqr()) / n2;
    Ok([sx, sy, sz])
}

/// ε_d-sequence for the dim b = 1 elliptic asymptotics:
/// d^{-n-1}·Tr_s[(N-m/2)exp(-t D²/2d²)] vs 2Σ r^d φ [e^j_{t/2}]^max.
#[allow(clippy::too_many_arguments)]
pub fn elliptic_weighted_asymptotics(
    alg: &ReductiveAlgebra,
    sigma: &Automorphism,
    dc: &DecomposedClass,
    orbit_data: &ClassOrbitData,
    k_mult: u32,
    t: f64,
    d_list: &[u32],
    quad_order: usize,
) -> Result<AsymptoticsErrors> {
    if dc.cz.delta_rank != 1 {
        return Err(Error::InvalidInput(format!(
            "weighted asymptotics needs dim b_σ(γ) = 1, got {}",
            dc.cz.delta_rank
        )));
    }
    let je = JEvaluator::new(alg, sigma, &dc.sd, &dc.cz)?;
    let mut eps = Vec::new();
    let mut lhs_list = Vec::new();
    let mut rhs_list = Vec::new();
    for &d in d_list {
        let irrep = build_sym_irrep(alg, d * k_mult, sigma)?;
        let tau = t / (d as f64 * d as f64);
        let lhs_raw = derham_orbital_supertrace(alg, &je, &irrep, tau, true, quad_order)?;
        let lhs = lhs_raw.re / (d as f64).powi(orbit_data.n_gamma as i32 + 1);
        let mut rhs = Complex64::new(0.0, 0.0);
        for (r, phi, terms, orbit) in &orbit_data.components {
            let v = et_dt(terms, orbit, t / 2.0)?;
            rhs += r.powu(d) * phi * Complex64::new(2.0 * v.e_t_max, 0.0);
        }
        eps.push((Complex64::new(lhs, 0.0) - rhs).norm());
        lhs_list.push(lhs);
        rhs_list.push(rhs.re);
    }
    let sup_d_eps = d_list
        .iter()
        .zip(&eps)
        .map(|(&d, e)| d as f64 * e)
        .fold(0.0_f64, f64::max);
    Ok(AsymptoticsErrors { d_list: d_list.to_vec(), eps, sup_d_eps, lhs: lhs_list, rhs: rhs_list })
}

/// Assembled leading-term data for a ledger.
pub struct TorsionAsymptotics {
    /// m(σ): max n(γσ) over the dim b = 1 elliptic classes.
    pub m_sigma: usize,
    /// ids of the classes in the maximal set E¹σ,max.
    pub e1_max: Vec<String>,
    /// leading(d) = Σ Vol·Σ_j r^d φ [W^j]^max per requested d.
    pub leading: Vec<(u32, Complex64)>,
    /// Per-class data (id, Vol, [(r_j, φ_j, W_j^max)]).
    pub per_class: Vec<(String, f64, Vec<(Complex64, Complex64, f64)>)>,
    /// Nonelliptic classes with their rescaled weights and the fitted
    /// exponential-decay rate (positive when the tail is exponentially small).
    pub nonelliptic_weights: Vec<(String, Vec<(u32, f64)>)>,
    pub nonelliptic_rate: f64,
}

/// Assemble the torsion leading term of a ledger for λ = k·ϖ.
pub fn torsion_leading(
    alg: &ReductiveAlgebra,
    sigma: &Automorphism,
    classes: &[DecomposedClass],
    k_mult: u32,
    d_list: &[u32],
    grid: usize,
) -> Result<TorsionAsymptotics> {
    // nondegeneracy of λ for the full group
    let u = CompactForm::new(alg)?;
    let full_orbit = catalog::sl2c_fundamental_orbit(alg, &u, k_mult, grid)?;
    let dim = alg.dim();
    let ip_full: Vec<Vec<f64>> = (0..alg.dim_p)
        .map(|i| {
            let mut im = vec![0.0; dim];
            im[i] = 1.0;
            u_coords(alg, &u, &vec![0.0; dim], &im)
        })
        .collect();
    let nd = nondegeneracy_check(&full_orbit, &ip_full);
    if !nd.ok {
        return Err(Error::NumericContract(
            "λ is degenerate: torsion leading term undefined".into(),
        ));
    }

    // classify classes
    let mut per_class = Vec::new();
    let mut class_n = Vec::new();
    for dc in classes {
        if dc.sd.is_elliptic() && dc.cz.delta_rank == 1 {
            let od = class_orbit_data(alg, sigma, dc, k_mult, grid)?;
            let mut comp_data = Vec::new();
            for (r, phi, terms, orbit) in &od.components {
                let w = w_invariant(terms, orbit, 1e-4, 400.0, 128)?;
                comp_data.push((*r, *phi, w.w_max));
            }
            class_n.push((dc.entry.id.clone(), od.n_gamma));
            per_class.push((dc.entry.id.clone(), dc.entry.volume, comp_data));
        }
    }
    if per_class.is_empty() {
        // E¹_σ empty: leading ≡ 0 with the exponential-decay verdict
        let (weights, rate) = nonelliptic_tail(alg, sigma, classes, k_mult, d_list)?;
        return Ok(TorsionAsymptotics {
            m_sigma: 0,
            e1_max: Vec::new(),
            leading: d_list.iter().map(|&d| (d, Complex64::new(0.0, 0.0))).collect(),
            per_class,
            nonelliptic_weights: weights,
            nonelliptic_rate: rate,
        })
    }
    let m_sigma = class_n.iter().map(|(_, n)| *n).max().unwrap();
    let e1_max: Vec<String> = class_n
        .iter()
        .filter(|(_, n)| *n == m_sigma)
        .map(|(id, _)| id.clone())
        .collect();

    let mut leading = Vec::new();
    for &d in d_list {
        let mut acc = Complex64::new(0.0, 0.0);
        for (id, vol, comps) in &per_class {
            if !e1_max.contains(id) {
                continue;
            }
            let mut class_sum = Complex64::new(0.0, 0.0);
            for (r, phi, wmax) in comps {
                class_sum += phase_power(*r, d) * phi * Complex64::new(*wmax, 0.0);
            }
            acc += class_sum * Complex64::new(*vol, 0.0);
        }
        leading.push((d, acc));
    }

    let (nonelliptic_weights, nonelliptic_rate) =
        nonelliptic_tail(alg, sigma, classes, k_mult, d_list)?;

    Ok(TorsionAsymptotics {
        m_sigma,
        e1_max,
        leading,
        per_class,
        nonelliptic_weights,
        nonelliptic_rate,
    })
}

/// r^d with renormalisation of the modulus to 1 every 64 steps, avoiding
/// drift over long sweeps.
pub fn phase_power(r: Complex64, d: u32) -> Complex64 {
    let mut acc = Complex64::new(1.0, 0.0);
    for step in 1..=d {
        acc *= r;
        if step % 64 == 0 {
            let n = acc.norm();
            if n > 0.0 {
                acc /= Complex64::new(n, 0.0);
            }
        }
    }
    acc
}

/// Rescaled weighted supertrace magnitudes of nonelliptic classes over the
/// d-sweep, and the fitted exponential rate of their decay.
fn nonelliptic_tail(
    alg: &ReductiveAlgebra,
    sigma: &Automorphism,
    classes: &[DecomposedClass],
    k_mult: u32,
    d_list: &[u32],
) -> Result<(Vec<(String, Vec<(u32, f64)>)>, f64)> {
    let mut out = Vec::new();
    let mut all_logs: Vec<(f64, f64)> = Vec::new();
    for dc in classes {
        if dc.sd.is_elliptic() {
            continue;
        }
        let je = JEvaluator::new(alg, sigma, &dc.sd, &dc.cz)?;
        let mut weights = Vec::new();
        for &d in d_list {
            let irrep = build_sym_irrep(alg, d * k_mult, sigma)?;
            // the proof integrates t/(2d²) up to t = d: the least-suppressed
            // endpoint τ = 1/(2d) carries e^{-|a|² d} weight
            let tau = 1.0 / (2.0 * d as f64);
            let v = derham_orbital_supertrace(alg, &je, &irrep, tau, true, 48)?;
            let w = v.norm() * dc.entry.volume;
            weights.push((d, w));
            if w > 1e-280 {
                all_logs.push((d as f64, w.ln()));
            }
        }
        out.push((dc.entry.id.clone(), weights));
    }
    let rate = if all_logs.len() >= 2 {
        let xs: Vec<f64> = all_logs.iter().map(|p| p.0).collect();
        let ys: Vec<f64> = all_logs.iter().map(|p| p.1).collect();
        -fit_slope(&xs, &ys)
    } else {
        f64::INFINITY
    };
    Ok((out, rate))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::assembly::parse_ledger;
    use crate::liecore::build_catalog;

    #[test]
    fn identity_class_orbit_is_full_sphere() {
        let alg = build_catalog("sl2c_real", 1.0).unwrap();
        let sigma = Automorphism::identity(&alg);
        let text = "id = identity\ngamma = 1,0,0,1\nvolume = 1\nelliptic = true\n";
        let ledger = parse_ledger(&alg, text).unwrap();
        let classes = crate::assembly::decompose_ledger(&alg, &sigma, &ledger).unwrap();
        let od = class_orbit_data(&alg, &sigma, &classes[0], 1, 24).unwrap();
        assert_eq!(od.n_gamma, 1);
        assert_eq!(od.components.len(), 1);
        let (r, phi, _, _) = &od.components[0];
        assert!((r - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        assert!((phi - Complex64::new(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn one_term_ledger_leading_is_exact_product() {
        let alg = build_catalog("sl2c_real", 1.0).unwrap();
        let sigma = Automorphism::identity(&alg);
        let vol = 1.7;
        let text = format!("id = identity\ngamma = 1,0,0,1\nvolume = {vol}\nelliptic = true\n");
        let ledger = parse_ledger(&alg, &text).unwrap();
        let classes = crate::assembly::decompose_ledger(&alg, &sigma, &ledger).unwrap();
        let ta = torsion_leading(&alg, &sigma, &classes, 1, &[4, 16], 24).unwrap();
        assert_eq!(ta.m_sigma, 1);
        // leading(d) = Vol · 1^d · 1 · [W]^max, d-independent here
        let w = ta.per_class[0].2[0].2;
        for (_, v) in &ta.leading {
            assert!((v.re - vol * w).abs() < 1e-12 * (vol * w).abs());
            assert!(v.im.abs() < 1e-14);
        }
    }
}
