//! Reference closed forms used to validate the main evaluators.
//!
//! These stay independent of the J-function machinery: the hyperbolic-plane
//! heat kernel is the classical McKean integral formula, rescaled to the
//! B-induced metric of a catalog group.

use crate::numerics::quad::gauss_legendre_on;

/// Heat kernel of exp(sΔ) on the curvature -1 hyperbolic plane at distance ρ,
/// with respect to the Riemannian volume.
///
/// McKean's formula:
/// p_s(ρ) = √2 e^{-s/4} (4πs)^{-3/2} ∫_ρ^∞ u e^{-u²/4s} / √(cosh u - cosh ρ) du.
pub fn h2_heat_kernel_std(s: f64, rho: f64) -> f64 {
    assert!(s > 0.0);
    let rho = rho.abs();
    // substitute u = ρ + w²; cosh u - cosh ρ = 2 sinh((u+ρ)/2) sinh(w²/2),
    // and writing sinh(x) = x·sinhc(x) keeps the integrand smooth at w = 0
    // even when ρ = 0.
    let w_max = (40.0 * s.sqrt() + 5.0).sqrt();
    let rule = gauss_legendre_on(400, 0.0, w_max);
    let sinhc = |x: f64| if x < 1e-12 { 1.0 } else { x.sinh() / x };
    let mut acc = 0.0;
    for (w, wt) in rule.nodes.iter().zip(&rule.weights) {
        let u = rho + w * w;
        let g = (u + rho) / 2.0;
        let h = w * w / 2.0;
        // √(cosh u - cosh ρ) = √2 · √(g·sinhc(g)) · w/√2 · √(sinhc(h)) · √2
        //                    = w · √(2 · g · sinhc(g) · sinhc(h) / w² · h) …
        // assembled directly: cosh u - cosh ρ = 2 g sinhc(g) · h sinhc(h) / 1,
        // with h = w²/2, so the root is w · √(g · sinhc(g) · sinhc(h)).
        let root = (g * sinhc(g) * sinhc(h)).sqrt();
        // du = 2w dw cancels the w in the root
        acc += wt * 2.0 * u * (-u * u / (4.0 * s)).exp() / root;
    }
    2f64.sqrt() * (-s / 4.0).exp() / (4.0 * std::f64::consts::PI * s).powf(1.5) * acc
}

/// Kernel of exp(-t L^X) on the sl2r symmetric space with B_scale = b and a
/// trivial coefficient bundle, as a function of the B-metric distance.
///
/// The B-metric has curvature -2/b, so exp(-t L^X) = e^{t/(4b)} exp((t/b) Δ_{-1})
/// after rescaling; the kernel w.r.t. the B-volume picks up the factor 2/b.
pub fn sl2r_heat_kernel(b_scale: f64, t: f64, dist_b: f64) -> f64 {
    let s = t / b_scale;
    let rho = (2.0 / b_scale).sqrt() * dist_b;
    (t / (4.0 * b_scale)).exp() * (2.0 / b_scale) * h2_heat_kernel_std(s, rho)
}

/// Normal-coordinate volume density of the curvature -c² hyperbolic plane:
/// r(ρ) = sinh(cρ)/(cρ) in geodesic polar coordinates around a point.
pub fn h2_polar_density(c: f64, rho: f64) -> f64 {
    let x = c * rho;
    if x.abs() < 1e-12 {
        1.0
    } else {
        x.sinh() / x
    }
}

/// Fermi-coordinate density along a geodesic in curvature -c²: cosh(cρ).
pub fn h2_fermi_density(c: f64, rho: f64) -> f64 {
    (c * rho).cosh()
}

/// Weyl character of the SU(2) irrep of dimension d+1 at a torus rotation
/// with half-angle θ (eigenvalues e^{±iθ} in the defining representation):
/// χ_d(θ) = sin((d+1)θ)/sin θ.
pub fn su2_weyl_character(d: u32, theta: f64) -> f64 {
    let n = d as f64 + 1.0;
    let s = theta.sin();
    if s.abs() > 1e-7 {
        (n * theta).sin() / s
    } else {
        // θ ∈ πZ: χ_d(mπ) = (±1)^{md} (d+1)
        let m = (theta / std::f64::consts::PI).round() as i64;
        let sign = if (m * d as i64) % 2 == 0 { 1.0 } else { -1.0 };
        sign * n
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::quad::gauss_legendre_on;

    #[test]
    fn h2_kernel_has_unit_mass() {
        // ∫_0^∞ p_s(ρ) 2π sinh ρ dρ = 1
        let s = 0.5;
        let rule = gauss_legendre_on(600, 0.0, 30.0);
        let mass: f64 = rule
            .nodes
            .iter()
            .zip(&rule.weights)
            .map(|(rho, w)| {
                w * h2_heat_kernel_std(s, *rho) * 2.0 * std::f64::consts::PI * rho.sinh()
            })
            .sum();
        assert!((mass - 1.0).abs() < 1e-8, "mass {mass}");
    }

    #[test]
    fn h2_kernel_on_diagonal_alternative_form() {
        // p_t(0) = e^{-t/4}/(4πt)^{3/2} ∫_0^∞ u e^{-u²/4t}/sinh(u/2) du
        let t = 0.7;
        let rule = gauss_legendre_on(800, 1e-12, 40.0);
        let alt: f64 = rule
            .nodes
            .iter()
            .zip(&rule.weights)
            .map(|(u, w)| w * u * (-u * u / (4.0 * t)).exp() / (u / 2.0).sinh())
            .sum::<f64>()
            * (-t / 4.0).exp()
            / (4.0 * std::f64::consts::PI * t).powf(1.5);
        let direct = h2_heat_kernel_std(t, 0.0);
        assert!((alt - direct).abs() < 1e-9 * direct.abs(), "{alt} vs {direct}");
    }

    #[test]
    fn h2_kernel_symmetric_positive() {
        for &t in &[0.25, 1.0, 4.0] {
            for &r in &[0.0, 0.3, 1.0, 2.5] {
                let v = h2_heat_kernel_std(t, r);
                assert!(v > 0.0);
                assert!((h2_heat_kernel_std(t, -r) - v).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn weyl_character_dimension_at_identity() {
        assert!((su2_weyl_character(7, 0.0) - 8.0).abs() < 1e-9);
        assert!((su2_weyl_character(3, std::f64::consts::PI) + 4.0).abs() < 1e-6);
    }

    #[test]
    fn weyl_character_generic() {
        let th = 0.4;
        assert!((su2_weyl_character(2, th) - ((3.0 * th).sin() / th.sin())).abs() < 1e-12);
    }
}
