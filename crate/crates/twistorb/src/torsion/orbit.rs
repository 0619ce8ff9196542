//! Coadjoint-orbit models for the CP¹-factor catalog: sphere orbits in u*,
//! point components, moment-map pairings, nondegeneracy margins and
//! Duistermaat–Heckman integrals by quadrature.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::liecore::ReductiveAlgebra;
use crate::numerics::quad::gauss_legendre;
use crate::reps::CompactForm;

/// Inner product on the compact form u = i·p ⊕ k: -B on (re, im) pairs.
fn u_inner(alg: &ReductiveAlgebra, a: &(Vec<f64>, Vec<f64>), b: &(Vec<f64>, Vec<f64>)) -> f64 {
    let bform = |x: &[f64], y: &[f64]| -> f64 {
        let mut acc = 0.0;
        for i in 0..alg.dim() {
            acc += x[i] * alg.b_matrix[(i, i)] * y[i];
        }
        acc
    };
    -(bform(&a.0, &b.0) - bform(&a.1, &b.1))
}

/// Coordinates of a u-element (re + i·im over the g-basis) in the u-onb.
pub fn u_coords(alg: &ReductiveAlgebra, u: &CompactForm, re: &[f64], im: &[f64]) -> Vec<f64> {
    let target = (re.to_vec(), im.to_vec());
    u.basis.iter().map(|b| u_inner(alg, &target, b)).collect()
}

/// One quadrature point of an orbit: moment coordinates over the u-onb with
/// a symplectic weight.
#[derive(Debug, Clone)]
pub struct OrbitPoint {
    pub mu: Vec<f64>,
    pub weight: f64,
}

/// A coadjoint-orbit (or fixed-component) model with a moment-map sampler.
#[derive(Debug, Clone)]
pub struct OrbitModel {
    pub id: String,
    pub points: Vec<OrbitPoint>,
    /// Σ weights = symplectic volume of the component.
    pub symplectic_volume: f64,
    /// |λ| in the B*-metric (common radius scale).
    pub lambda_norm: f64,
    /// Nondegeneracy margin found at construction (may be zero).
    pub margin: f64,
}

impl OrbitModel {
    /// ⟨μ, v⟩ at a point, v given as (re, im) coordinates over the g-basis
    /// and projected through the u-onb coordinates `v_u`.
    pub fn pair(&self, pt: &OrbitPoint, v_u: &[f64]) -> f64 {
        pt.mu.iter().zip(v_u).map(|(m, v)| m * v).sum()
    }

    /// A point component at a fixed moment value.
    pub fn point_component(id: &str, mu: Vec<f64>, lambda_norm: f64) -> Self {
        OrbitModel {
            id: id.to_string(),
            points: vec![OrbitPoint { mu, weight: 1.0 }],
            symplectic_volume: 1.0,
            lambda_norm,
            margin: 0.0,
        }
    }

    /// Sphere orbit of radius k·|ϖ| inside the span of three u-onb
    /// directions (an su(2) factor), with symplectic volume k.
    ///
    /// `axes` are indices into the u-onb; the factor norm convention makes
    /// the moment coordinates ℓ·n̂_a along those axes.
    pub fn sphere(
        id: &str,
        dim_u: usize,
        axes: [usize; 3],
        lambda_norm: f64,
        k_mult: u32,
        grid: usize,
    ) -> Self {
        // z = cos θ Gauss–Legendre × uniform azimuth: exact for smooth
        // integrands, total mass = symplectic volume k
        let rule = gauss_legendre(grid);
        let n_az = 2 * grid;
        let mut points = Vec::with_capacity(grid * n_az);
        let vol = k_mult as f64;
        for (z, wz) in rule.nodes.iter().zip(&rule.weights) {
            let s = (1.0 - z * z).max(0.0).sqrt();
            for ia in 0..n_az {
                let phi = 2.0 * std::f64::consts::PI * (ia as f64 + 0.5) / n_az as f64;
                let nhat = [s * phi.cos(), s * phi.sin(), *z];
                let mut mu = vec![0.0; dim_u];
                for (a, &ax) in axes.iter().enumerate() {
                    mu[ax] = lambda_norm * nhat[a];
                }
                // uniform measure: total ∫ = 2 (z) × n_az terms → weight
                points.push(OrbitPoint { mu, weight: vol * wz / (2.0 * n_az as f64) });
            }
        }
        OrbitModel {
            id: id.to_string(),
            points,
            symplectic_volume: vol,
            lambda_norm,
            margin: 0.0,
        }
    }
}

/// Nondegeneracy verdict with the sampled margin.
#[derive(Debug, Clone)]
pub struct Nondegeneracy {
    pub ok: bool,
    pub margin: f64,
}

/// Check μ(N) ∩ k* = ∅ through the sampled bound |⟨μ, iβ⟩|² ≥ c, where iβ
/// runs over i·(p-basis of the class); `p_u_coords` are those directions in
/// u-onb coordinates.
pub fn nondegeneracy_check(orbit: &OrbitModel, p_u_coords: &[Vec<f64>]) -> Nondegeneracy {
    let mut margin = f64::INFINITY;
    for pt in &orbit.points {
        let v: f64 = p_u_coords
            .iter()
            .map(|ip| orbit.pair(pt, ip).powi(2))
            .sum();
        margin = margin.min(v);
    }
    if !margin.is_finite() {
        margin = 0.0;
    }
    Nondegeneracy { ok: margin > 1e-12, margin }
}

/// Duistermaat–Heckman integral R̃(y) = ∫ exp(2πi⟨μ, y⟩ + η) by quadrature,
/// for complexified y over the u-onb, optionally damped by
/// exp(-4π²t|⟨μ,iβ⟩|²).
pub fn dh_integral(
    orbit: &OrbitModel,
    y_re: &[f64],
    y_im: &[f64],
    damping: Option<(f64, &[Vec<f64>])>,
) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    let two_pi_i = Complex64::new(0.0, 2.0 * std::f64::consts::PI);
    for pt in &orbit.points {
        let pr = orbit.pair(pt, y_re);
        let pi = orbit.pair(pt, y_im);
        let phase = (two_pi_i * Complex64::new(pr, pi)).exp();
        let damp = match damping {
            None => 1.0,
            Some((t, ibeta)) => {
                let q: f64 = ibeta.iter().map(|ip| orbit.pair(pt, ip).powi(2)).sum();
                (-4.0 * std::f64::consts::PI.powi(2) * t * q).exp()
            }
        };
        acc += phase * Complex64::new(pt.weight * damp, 0.0);
    }
    acc
}

/// The standard catalog orbits.
pub mod catalog {
    use super::*;

    /// Factor-1 su(2)-onb of sl2c_real inside the u-onb: g_a = (i·p_a + e_a)/√2.
    pub fn sl2c_factor1_axes(alg: &ReductiveAlgebra, u: &CompactForm) -> [Vec<f64>; 3] {
        let dim = alg.dim();
        let mut out = Vec::new();
        for a in 0..3 {
            let mut re = vec![0.0; dim];
            let mut im = vec![0.0; dim];
            im[a] = 1.0 / 2f64.sqrt(); // i·p_a/√2
            re[3 + a] = 1.0 / 2f64.sqrt(); // e_a/√2
            out.push(u_coords(alg, u, &re, &im));
        }
        [out[0].clone(), out[1].clone(), out[2].clone()]
    }

    /// Orbit of λ = k·ϖ on the first su(2) factor of sl2c_real.
    pub fn sl2c_fundamental_orbit(
        alg: &ReductiveAlgebra,
        u: &CompactForm,
        k_mult: u32,
        grid: usize,
    ) -> Result<OrbitModel> {
        if alg.name != "sl2c_real" {
            return Err(Error::UnknownCatalog(format!(
                "sl2c orbit requested for {}",
                alg.name
            )));
        }
        // the factor onb is not axis-aligned with the u-onb; build points by
        // μ = ℓ Σ n̂_a ĝ_a with ĝ_a the factor onb in u-coordinates
        let axes = sl2c_factor1_axes(alg, u);
        let lam = k_mult as f64 * fundamental_norm_sl2c(alg);
        let rule = gauss_legendre(grid);
        let n_az = 2 * grid;
        let dim_u = u.basis.len();
        let mut points = Vec::new();
        for (z, wz) in rule.nodes.iter().zip(&rule.weights) {
            let s = (1.0 - z * z).max(0.0).sqrt();
            for ia in 0..n_az {
                let phi = 2.0 * std::f64::consts::PI * (ia as f64 + 0.5) / n_az as f64;
                let nhat = [s * phi.cos(), s * phi.sin(), *z];
                let mut mu = vec![0.0; dim_u];
                for (a, ax) in axes.iter().enumerate() {
                    for (m, x) in mu.iter_mut().zip(ax) {
                        *m += lam * nhat[a] * x;
                    }
                }
                points.push(OrbitPoint {
                    mu,
                    weight: k_mult as f64 * wz / (2.0 * n_az as f64),
                });
            }
        }
        Ok(OrbitModel {
            id: format!("sl2c-factor1-k{k_mult}"),
            points,
            symplectic_volume: k_mult as f64,
            lambda_norm: lam,
            margin: 0.0,
        })
    }

    /// |ϖ| of the factor-1 su(2): half the factor root norm; with the
    /// B = Re Tr convention this is 1/(2π·2) · … computed from first
    /// principles: the factor defining weight has ρ(g₃)-eigenvalues ±πi·…
    pub fn fundamental_norm_sl2c(alg: &ReductiveAlgebra) -> f64 {
        // factor Cartan ĝ₃ = (i·p₃ + e₃)/√2; the holomorphic defining rep has
        // ρ(ĝ₃) = (i·ρ(p₃) + ρ(e₃))/√2 with eigenvalues ±i·√2/…:
        // ρ(p₃) = s₃/√2·(1/√b), ρ(e₃) = i s₃/√2·(1/√b):
        // ρ(ĝ₃) = (i s₃/√2 + i s₃/√2)/(√2·√b) = i s₃·√2/ (√2 √b) = i s₃/√b.
        // eigenvalues ±i/√b = 2πi⟨ϖ, ĝ₃⟩ → |ϖ| = 1/(2π√b).
        1.0 / (2.0 * std::f64::consts::PI * alg.b_scale.sqrt())
    }

    /// su(2)-orbit for sl2r (always degenerate for nonzero λ on k*).
    pub fn sl2r_orbit(
        alg: &ReductiveAlgebra,
        u: &CompactForm,
        k_mult: u32,
        grid: usize,
    ) -> Result<OrbitModel> {
        if alg.name != "sl2r" {
            return Err(Error::UnknownCatalog(format!(
                "sl2r orbit requested for {}",
                alg.name
            )));
        }
        let _ = u;
        // u-onb is {i·e₁, i·e₂, e₃}: the sphere axes are the onb directly
        let lam = k_mult as f64 / (2.0 * std::f64::consts::PI * (2.0 * alg.b_scale).sqrt());
        Ok(OrbitModel::sphere("sl2r-orbit", 3, [0, 1, 2], lam, k_mult, grid))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liecore::build_catalog;

    #[test]
    fn sl2r_orbit_is_degenerate() {
        // δ(SL(2,R)) = 0: μ(N) meets k* and the margin vanishes
        let alg = build_catalog("sl2r", 1.0).unwrap();
        let u = CompactForm::new(&alg).unwrap();
        let orbit = catalog::sl2r_orbit(&alg, &u, 1, 24).unwrap();
        // i·p-directions are the first two u-onb axes
        let mut ip = Vec::new();
        for a in 0..2 {
            let mut re = vec![0.0; 3];
            let mut im = vec![0.0; 3];
            im[a] = 1.0;
            let _ = &mut re;
            ip.push(u_coords(&alg, &u, &re, &im));
        }
        let nd = nondegeneracy_check(&orbit, &ip);
        assert!(!nd.ok, "sl2r orbit must be degenerate, margin {}", nd.margin);
    }

    #[test]
    fn sl2c_fundamental_is_nondegenerate_with_quadratic_scaling() {
        let alg = build_catalog("sl2c_real", 1.0).unwrap();
        let u = CompactForm::new(&alg).unwrap();
        let orbit1 = catalog::sl2c_fundamental_orbit(&alg, &u, 1, 24).unwrap();
        let orbit2 = catalog::sl2c_fundamental_orbit(&alg, &u, 2, 24).unwrap();
        let mut ip = Vec::new();
        for a in 0..3 {
            let mut im = vec![0.0; 6];
            im[a] = 1.0;
            ip.push(u_coords(&alg, &u, &vec![0.0; 6], &im));
        }
        let nd1 = nondegeneracy_check(&orbit1, &ip);
        let nd2 = nondegeneracy_check(&orbit2, &ip);
        assert!(nd1.ok && nd1.margin > 0.0);
        // margin = ℓ²/2: closed form on this orbit
        let expect = orbit1.lambda_norm.powi(2) / 2.0;
        assert!((nd1.margin - expect).abs() < 1e-10 * expect, "{} vs {}", nd1.margin, expect);
        // λ ↦ 2λ quadruples the margin
        assert!((nd2.margin - 4.0 * nd1.margin).abs() < 1e-9 * nd2.margin);
    }

    #[test]
    fn dh_at_zero_is_symplectic_volume() {
        let alg = build_catalog("sl2c_real", 1.0).unwrap();
        let u = CompactForm::new(&alg).unwrap();
        for k in [1u32, 3] {
            let orbit = catalog::sl2c_fundamental_orbit(&alg, &u, k, 32).unwrap();
            let z = vec![0.0; 6];
            let r0 = dh_integral(&orbit, &z, &z, None);
            assert!((r0.re - k as f64).abs() < 1e-12, "R(0) = {r0} for k={k}");
        }
    }

    #[test]
    fn dh_laplacian_eigenrelation_on_grid() {
        // Δ R = -4π²|λ|² R along u-directions, central differences
        let alg = build_catalog("sl2c_real", 1.0).unwrap();
        let u = CompactForm::new(&alg).unwrap();
        let orbit = catalog::sl2c_fundamental_orbit(&alg, &u, 1, 48).unwrap();
        let dim_u = 6;
        let y0: Vec<f64> = (0..dim_u).map(|i| 0.1 * ((i + 1) as f64).sin()).collect();
        let z = vec![0.0; dim_u];
        let f = |y: &[f64]| dh_integral(&orbit, y, &z, None);
        let h = 1e-3;
        let mut lap = Complex64::new(0.0, 0.0);
        for a in 0..dim_u {
            let mut yp = y0.clone();
            yp[a] += h;
            let mut ym = y0.clone();
            ym[a] -= h;
            lap += f(&yp) + f(&ym) - f(&y0) * Complex64::new(2.0, 0.0);
        }
        lap /= Complex64::new(h * h, 0.0);
        let lam2 = orbit.lambda_norm.powi(2);
        let expect = f(&y0) * Complex64::new(-4.0 * std::f64::consts::PI.powi(2) * lam2, 0.0);
        assert!(
            (lap - expect).norm() < 1e-4 * expect.norm().max(1e-6),
            "Δ-relation: {lap} vs {expect}"
        );
    }

    #[test]
    fn damped_integral_decays_at_margin_rate() {
        let alg = build_catalog("sl2c_real", 1.0).unwrap();
        let u = CompactForm::new(&alg).unwrap();
        let orbit = catalog::sl2c_fundamental_orbit(&alg, &u, 1, 32).unwrap();
        let mut ip = Vec::new();
        for a in 0..3 {
            let mut im = vec![0.0; 6];
            im[a] = 1.0;
            ip.push(u_coords(&alg, &u, &vec![0.0; 6], &im));
        }
        let nd = nondegeneracy_check(&orbit, &ip);
        let z = vec![0.0; 6];
        let v1 = dh_integral(&orbit, &z, &z, Some((1.0, &ip))).norm();
        let v2 = dh_integral(&orbit, &z, &z, Some((2.0, &ip))).norm();
        // on this orbit |⟨μ,iβ⟩|² is constant = margin: exact exponential
        let rate = (v1 / v2).ln();
        let expect = 4.0 * std::f64::consts::PI.powi(2) * nd.margin;
        assert!((rate - expect).abs() < 1e-8 * expect, "{rate} vs {expect}");
    }
}
