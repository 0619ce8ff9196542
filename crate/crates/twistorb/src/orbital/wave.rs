//! Wave-operator support probes through the Euclidean model on z_σ(γ).
//!
//! For an even Gaussian window g centred at s₀ with width w, the test
//! function μ(x) = ∫ g(s) cos(sx) ds = cos(s₀x)·e^{-w²x²/2} is of Gaussian
//! type, and the probe value is
//!
//!   V = Tr^E[ μ(√(-Δ^{z_σ(γ)}/2 + A)) (J ρ(k⁻¹σ)e^{-iρ(Y)} δ_{y=a}) ](0),
//!
//! computable as an explicit Fourier integral on z_σ(γ) = R^{p+q}. The wave
//! identity makes V the pairing of g against an even distribution supported
//! in {|s| ≥ √2|a|}, so windows inside the gap must give (numerically) zero.

use num_complex::Complex64;

use super::jfunc::JEvaluator;
use crate::error::{Error, Result};
use crate::numerics::matfun::expm;
use crate::numerics::quad::{gauss_hermite, gauss_legendre_on, tensor};
use crate::reps::Irrep;

/// A Gaussian window μ̂ centred at s₀ ≥ 0 with width w.
#[derive(Debug, Clone, Copy)]
pub struct WaveWindow {
    pub center: f64,
    pub width: f64,
}

/// Radial kernel of μ(√(-Δ/2 + c)) on R^n at distance z, for
/// μ(x) = cos(s₀x) e^{-w²x²/2}.
fn window_kernel(n: usize, c: f64, win: WaveWindow, z: f64) -> Result<f64> {
    let multiplier = |xi2: f64| -> f64 {
        let lam = (xi2 / 2.0 + c).max(0.0);
        let x = lam.sqrt();
        (win.center * x).cos() * (-win.width * win.width * lam / 2.0).exp()
    };
    let xi_max = 16.0 / win.width + win.center;
    match n {
        1 => {
            // (1/π) ∫₀^∞ m(ξ²) cos(ξ z) dξ
            let rule = gauss_legendre_on(2000, 0.0, xi_max);
            let mut acc = 0.0;
            for (xi, w) in rule.nodes.iter().zip(&rule.weights) {
                acc += w * multiplier(xi * xi) * (xi * z).cos();
            }
            Ok(acc / std::f64::consts::PI)
        }
        2 => {
            // 2-D tensor: (2π)^{-2} ∫ m(|ξ|²) e^{-iξ·z} dξ, z along the x-axis
            let rule = gauss_legendre_on(400, -xi_max, xi_max);
            let mut acc = 0.0;
            for (xi1, w1) in rule.nodes.iter().zip(&rule.weights) {
                for (xi2, w2) in rule.nodes.iter().zip(&rule.weights) {
                    acc += w1 * w2 * multiplier(xi1 * xi1 + xi2 * xi2) * (xi1 * z).cos();
                }
            }
            Ok(acc / (2.0 * std::f64::consts::PI).powi(2))
        }
        3 => {
            // radial: (1/2π²) ∫₀^∞ m(r²) sinc(r z) r² dr
            let rule = gauss_legendre_on(2000, 0.0, xi_max);
            let mut acc = 0.0;
            for (r, w) in rule.nodes.iter().zip(&rule.weights) {
                let sinc = if (r * z).abs() < 1e-12 { 1.0 } else { (r * z).sin() / (r * z) };
                acc += w * multiplier(r * r) * sinc * r * r;
            }
            Ok(acc / (2.0 * std::f64::consts::PI.powi(2)))
        }
        other => Err(Error::InvalidInput(format!(
            "wave probe supports dim z_σ(γ) ≤ 3, got {other}"
        ))),
    }
}

/// Evaluate a wave-support probe.
///
/// `a_scalar` is the (scalar) endomorphism A; nonscalar A is out of scope.
/// The result record flags windows whose 4-width neighbourhood crosses the
/// singular support ±√2|a|.
pub fn wave_support_probe(
    je: &JEvaluator,
    irrep: &Irrep,
    a_scalar: f64,
    win: WaveWindow,
) -> Result<(Complex64, bool)> {
    if win.width <= 0.0 {
        return Err(Error::InvalidInput("window width must be positive".into()));
    }
    let p = je.cz.p;
    let q = je.cz.q;
    let n = p + q;
    let a_norm = je.alg.norm(&je.sd.a);
    let gap_edge = 2f64.sqrt() * a_norm;
    let overlaps = (win.center - gap_edge).abs() < 4.0 * win.width
        || (win.center + 4.0 * win.width > gap_edge && win.center < gap_edge);

    let rho_k_sigma = irrep.rho_group(&je.sd.k.inverse()) * &irrep.rho_sigma;

    if q == 0 {
        let k = window_kernel(n, a_scalar, win, a_norm)?;
        let j0 = je.j_function(&[])?;
        let tr = rho_k_sigma.trace();
        return Ok((j0 * tr * Complex64::new(k, 0.0), overlaps));
    }
    if q > 2 {
        return Err(Error::InvalidInput("wave probe supports q ≤ 2".into()));
    }

    // ∫_{R^q} k(√(|a|² + |Y|²)) J(Y) Tr[ρ(k⁻¹σ)e^{-iρY}] dY with a Gaussian-
    // decaying kernel; Gauss–Hermite in the effective width w per axis.
    let scale = win.width * 2f64.sqrt();
    let rule = gauss_hermite(80);
    let (nodes, weights) = tensor(&rule, q);
    let mut acc = Complex64::new(0.0, 0.0);
    for (node, wq) in nodes.iter().zip(&weights) {
        let y: Vec<f64> = node.iter().map(|x| x * scale).collect();
        let ynorm2: f64 = y.iter().map(|x| x * x).sum();
        let z = (a_norm * a_norm + ynorm2).sqrt();
        let k = window_kernel(n, a_scalar, win, z)?;
        let j = je.j_function(&y)?;
        let y_amb = je.embed_y(&y);
        let e = expm(&irrep.rho(&y_amb).map(|x| x * Complex64::new(0.0, -1.0)));
        let tr = (&rho_k_sigma * e).trace();
        // undo the Gauss–Hermite weight: integrand carries no e^{-|x|²}
        let gauss_comp = (node.iter().map(|x| x * x).sum::<f64>()).exp();
        acc += j * tr * Complex64::new(k * wq * gauss_comp * scale.powi(q as i32), 0.0);
    }
    Ok((acc, overlaps))
}
