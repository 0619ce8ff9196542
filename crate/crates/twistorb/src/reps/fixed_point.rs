//! Fixed-point data of u₀σ on the flag manifold N_λ and two-point
//! Duistermaat–Heckman localisation, for orbits that are products of CP¹
//! factors (the SU(2) and SU(2)×SU(2) compact forms of the catalog).
//!
//! On P(C²) the fixed points of the projective action of a matrix M are its
//! eigenlines; the fibre phases r_j and the Todd factors φ_j come from the
//! eigenvalues of M and of its differential, and the localisation functions
//! R_j from the extremal eigenvalues of the defining action.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numerics::matfun::CMat;

/// One connected component of the fixed-point set.
#[derive(Debug, Clone)]
pub struct FixedPointComponent {
    /// Complex dimension (0 for a pole pair member, 1 for a full CP¹).
    pub complex_dim: usize,
    /// Unit phase r_j: action of u₀σ on the L_λ-fibre.
    pub r: Complex64,
    /// Degree-0 equivariant Todd factor φ_j.
    pub phi: Complex64,
    /// Extremal defining-action eigenvalue pair per active factor, scaled by
    /// the weight multiple k: R_j(y) is assembled from these.
    localization: Vec<LocalizationFactor>,
}

#[derive(Debug, Clone)]
enum LocalizationFactor {
    /// Isolated fixed point: R-factor e^{ν(y)} with ν the eigenvalue of
    /// ρ^{V^λ}(y) on the fixed line (stored as the line index).
    Point { line: usize, k: u32 },
    /// Whole CP¹: two-fixed-point DH closed form with weight multiple k.
    Sphere { k: u32 },
}

/// Fixed-point data of u₀σ acting on N_λ.
#[derive(Debug, Clone)]
pub struct FixedPointData {
    pub components: Vec<FixedPointComponent>,
    /// n(u₀σ): maximal complex dimension over the components.
    pub n_max: usize,
    /// Indices of the maximal-dimension components.
    pub j_max: Vec<usize>,
    /// The projective matrices (one per active CP¹ factor).
    factor_actions: Vec<FactorAction>,
    /// Extension phase convention: the functorial family carries c₁^d.
    pub c1: Complex64,
}

#[derive(Debug, Clone)]
struct FactorAction {
    /// The 2×2 matrix inducing the u₀σ-action on this factor.
    m: CMat,
    /// Eigenlines (columns) and eigenvalues when the action is nontrivial.
    lines: Option<(CMat, [Complex64; 2])>,
    k: u32,
}

/// Eigen-decomposition of a 2×2 complex matrix; `None` when it is scalar.
fn eigenlines_2x2(m: &CMat) -> Option<(CMat, [Complex64; 2])> {
    let tr = m[(0, 0)] + m[(1, 1)];
    let det = m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)];
    let disc = (tr * tr - det * Complex64::new(4.0, 0.0)).sqrt();
    let l1 = (tr + disc) * Complex64::new(0.5, 0.0);
    let l2 = (tr - disc) * Complex64::new(0.5, 0.0);
    let scale = m.norm().max(1.0);
    if (l1 - l2).norm() < 1e-10 * scale {
        // scalar (or non-semisimple, excluded for unitary-type input)
        return None;
    }
    let mut cols = CMat::zeros(2, 2);
    for (idx, l) in [l1, l2].iter().enumerate() {
        // (m - l) has rank 1; its kernel is the eigenline
        let a = m[(0, 0)] - l;
        let b = m[(0, 1)];
        let c = m[(1, 0)];
        let d = m[(1, 1)] - l;
        let (v0, v1) = if b.norm() + a.norm() > c.norm() + d.norm() {
            (-b, a)
        } else {
            (-d, c)
        };
        let n = (v0.norm_sqr() + v1.norm_sqr()).sqrt();
        cols[(0, idx)] = v0 / n;
        cols[(1, idx)] = v1 / n;
    }
    Some((cols, [l1, l2]))
}

/// Defining-action eigenvalue ν_i(y) of a 2×2 algebra element on the i-th
/// stored eigenline, extended off the commuting locus through the symmetric
/// extremal-eigenvalue pair.
fn defining_eigs(y: &CMat) -> (Complex64, Complex64) {
    let tr = y[(0, 0)] + y[(1, 1)];
    let det = y[(0, 0)] * y[(1, 1)] - y[(0, 1)] * y[(1, 0)];
    let disc = (tr * tr - det * Complex64::new(4.0, 0.0)).sqrt();
    let half = Complex64::new(0.5, 0.0);
    ((tr + disc) * half, (tr - disc) * half)
}

impl FixedPointData {
    /// R_j(y): product over active factors of the localisation closed forms,
    /// where y is given per-factor as a 2×2 matrix of the defining action
    /// ρ^{V_factor}(y).
    pub fn r_function(&self, j: usize, y_factors: &[CMat]) -> Complex64 {
        let comp = &self.components[j];
        let mut out = Complex64::new(1.0, 0.0);
        for (f, loc) in comp.localization.iter().enumerate() {
            let y = &y_factors[f];
            match loc {
                LocalizationFactor::Point { line, k } => {
                    // ν on the stored eigenline: v^H (ρ y) v for the line vector
                    let fa = &self.factor_actions[f];
                    let (lines, _) = fa.lines.as_ref().expect("point component has lines");
                    let v0 = lines[(0, *line)];
                    let v1 = lines[(1, *line)];
                    let nu = v0.conj() * (y[(0, 0)] * v0 + y[(0, 1)] * v1)
                        + v1.conj() * (y[(1, 0)] * v0 + y[(1, 1)] * v1);
                    out *= (nu * Complex64::new(*k as f64, 0.0)).exp();
                }
                LocalizationFactor::Sphere { k } => {
                    let (n1, n2) = defining_eigs(y);
                    let kk = Complex64::new(*k as f64, 0.0);
                    let (a, b) = (n1 * kk, n2 * kk);
                    let diff = (a - b) / kk;
                    out *= if diff.norm() < 1e-6 {
                        // removable singularity: (e^a - e^b)/((a-b)/k) to 4th order
                        let d = a - b;
                        let mid = ((a + b) * Complex64::new(0.5, 0.0)).exp();
                        let d2 = d * d;
                        kk * mid
                            * (Complex64::new(1.0, 0.0)
                                + d2 * Complex64::new(1.0 / 24.0, 0.0)
                                + d2 * d2 * Complex64::new(1.0 / 1920.0, 0.0))
                    } else {
                        (a.exp() - b.exp()) / diff
                    };
                }
            }
        }
        out
    }

    /// Number of active CP¹ factors.
    pub fn n_factors(&self) -> usize {
        self.factor_actions.len()
    }

    /// Weight multiple of a factor.
    pub fn factor_k(&self, f: usize) -> u32 {
        self.factor_actions[f].k
    }
}

/// Build the fixed-point data for the projective action of the matrices
/// `factor_ms` (one per CP¹ factor, the matrix of u₀σ on the factor's
/// defining representation) with weight multiples `ks` and extension phase
/// `c1` on the L_λ-fibre of the distinguished factor family.
pub fn fixed_point_data(factor_ms: &[CMat], ks: &[u32], c1: Complex64) -> Result<FixedPointData> {
    if factor_ms.len() != ks.len() {
        return Err(Error::InvalidInput("one weight multiple per factor".into()));
    }
    let mut factors = Vec::new();
    for (m, &k) in factor_ms.iter().zip(ks) {
        if k == 0 {
            continue; // point factor, drops out of N_λ
        }
        // normalise to det 1 phase-freedom: scale so |det| = 1 already holds
        let lines = eigenlines_2x2(m);
        factors.push(FactorAction { m: m.clone(), lines, k });
    }

    // enumerate components: product over factors of {whole sphere} or {2 poles}
    let mut components: Vec<FixedPointComponent> = vec![FixedPointComponent {
        complex_dim: 0,
        r: c1,
        phi: Complex64::new(1.0, 0.0),
        localization: Vec::new(),
    }];
    for (fi, fa) in factors.iter().enumerate() {
        let mut next = Vec::new();
        for base in &components {
            match &fa.lines {
                None => {
                    // scalar action: whole CP¹ is fixed
                    let scalar = fa.m[(0, 0)];
                    let mut c = base.clone();
                    c.complex_dim += 1;
                    // fibre phase: scalar^k on the highest-weight line
                    c.r *= scalar.powu(fa.k);
                    c.localization.push(LocalizationFactor::Sphere { k: fa.k });
                    next.push(c);
                }
                Some((_, eigs)) => {
                    for (line, (this, other)) in
                        [(0usize, (eigs[0], eigs[1])), (1, (eigs[1], eigs[0]))]
                    {
                        let mut c = base.clone();
                        // fibre: μ_line^k; tangent eigenvalue t = other/this
                        c.r *= this.powu(fa.k);
                        let t = other / this;
                        c.phi *= Complex64::new(1.0, 0.0) / (Complex64::new(1.0, 0.0) - t);
                        c.localization.push(LocalizationFactor::Point { line, k: fa.k });
                        next.push(c);
                    }
                }
            }
        }
        components = next;
        let _ = fi;
    }

    // unitarity of the fibre phases
    for c in &components {
        if (c.r.norm() - 1.0).abs() > 1e-8 {
            return Err(Error::Invariant(format!(
                "fixed-point fibre phase not unimodular: |r| = {}",
                c.r.norm()
            )));
        }
    }

    let n_max = components.iter().map(|c| c.complex_dim).max().unwrap_or(0);
    let j_max = components
        .iter()
        .enumerate()
        .filter(|(_, c)| c.complex_dim == n_max)
        .map(|(j, _)| j)
        .collect();
    Ok(FixedPointData { components, n_max, j_max, factor_actions: factors, c1 })
}
