//! Catalog reductive Lie algebras: sl(2,R), the realification of sl(2,C),
//! and sl(3,R), with brackets, B, θ and Casimir constants.


use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numerics::matfun::{expm, CMat, RMat};

/// A catalog reductive matrix Lie algebra with Cartan data.
///
/// Basis convention: indices 0..dim_p span p (B positive definite),
/// dim_p..dim_p+dim_k span k (B negative definite); the basis is
/// orthonormal for ⟨X,Y⟩ = -B(X,θY).
#[derive(Debug, Clone)]
pub struct ReductiveAlgebra {
    pub name: String,
    pub dim_p: usize,
    pub dim_k: usize,
    /// Basis matrices in the defining representation.
    pub basis: Vec<CMat>,
    /// Structure constants: bracket[i][j] = coordinates of [e_i, e_j].
    pub bracket_table: Vec<Vec<Vec<f64>>>,
    /// Gram matrix of B on the basis (diag(+1,..,+1,-1,..,-1) by construction).
    pub b_matrix: RMat,
    /// θ on g in the basis: diag(-1 on p, +1 on k).
    pub theta: RMat,
    pub b_scale: f64,
    /// Matrix size of the defining representation.
    pub rep_dim: usize,
    /// True when the defining representation is complex (sl2c_real).
    pub complex_entries: bool,
}

impl ReductiveAlgebra {
    /// Total dimension m + n.
    pub fn dim(&self) -> usize {
        self.dim_p + self.dim_k
    }

    /// Matrix of an algebra vector given by coordinates.
    pub fn matrix_of(&self, coords: &[f64]) -> CMat {
        let mut m = CMat::zeros(self.rep_dim, self.rep_dim);
        for (c, b) in coords.iter().zip(&self.basis) {
            m += b.map(|x| x * Complex64::new(*c, 0.0));
        }
        m
    }

    /// Coordinates of an algebra matrix, by ⟨·,·⟩-projection.
    pub fn coords_of(&self, m: &CMat) -> Vec<f64> {
        self.basis.iter().map(|b| self.inner_mat(m, b)).collect()
    }

    /// ⟨X,Y⟩ = -B(X,θY) on defining-representation matrices.
    pub fn inner_mat(&self, x: &CMat, y: &CMat) -> f64 {
        // θY = -Y^H, so ⟨X,Y⟩ = B(X, Y^H) = b_scale · Re Tr(X Y^H)
        let prod = x * y.adjoint();
        self.b_scale * prod.trace().re
    }

    /// B(X,Y) on matrices.
    pub fn b_form(&self, x: &CMat, y: &CMat) -> f64 {
        self.b_scale * (x * y).trace().re
    }

    /// ⟨·,·⟩ on coordinate vectors (Euclidean, basis is orthonormal).
    pub fn inner(&self, x: &[f64], y: &[f64]) -> f64 {
        x.iter().zip(y).map(|(a, b)| a * b).sum()
    }

    /// Norm of a coordinate vector.
    pub fn norm(&self, x: &[f64]) -> f64 {
        self.inner(x, x).sqrt()
    }

    /// ad(Y) as a matrix on g in the basis, Y given by coordinates.
    pub fn ad(&self, y: &[f64]) -> RMat {
        let d = self.dim();
        let mut m = RMat::zeros(d, d);
        for j in 0..d {
            for i in 0..d {
                // [y, e_j] = Σ_i Σ_a y_a c_{a j}^i e_i
                let mut acc = 0.0;
                for (a, ya) in y.iter().enumerate() {
                    if *ya != 0.0 {
                        acc += ya * self.bracket_table[a][j][i];
                    }
                }
                m[(i, j)] = acc;
            }
        }
        m
    }

    /// Bracket of two coordinate vectors.
    pub fn bracket(&self, x: &[f64], y: &[f64]) -> Vec<f64> {
        let d = self.dim();
        let mut out = vec![0.0; d];
        for (i, xi) in x.iter().enumerate() {
            if *xi == 0.0 {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if *yj == 0.0 {
                    continue;
                }
                for k in 0..d {
                    out[k] += xi * yj * self.bracket_table[i][j][k];
                }
            }
        }
        out
    }

    /// exp of an algebra vector in the defining representation.
    pub fn exp_vec(&self, coords: &[f64]) -> CMat {
        expm(&self.matrix_of(coords))
    }

    /// Ad(g) on g in the basis.
    pub fn ad_group(&self, g: &CMat) -> RMat {
        let d = self.dim();
        let gi = g
            .clone()
            .lu()
            .try_inverse()
            .expect("group element must be invertible");
        let mut m = RMat::zeros(d, d);
        for j in 0..d {
            let conj = g * &self.basis[j] * &gi;
            let coords = self.coords_of(&conj);
            for i in 0..d {
                m[(i, j)] = coords[i];
            }
        }
        m
    }

    /// Projection of a coordinate vector onto the p-part.
    pub fn p_part(&self, v: &[f64]) -> Vec<f64> {
        let mut out = v.to_vec();
        for x in out.iter_mut().skip(self.dim_p) {
            *x = 0.0;
        }
        out
    }

    /// Projection of a coordinate vector onto the k-part.
    pub fn k_part(&self, v: &[f64]) -> Vec<f64> {
        let mut out = v.to_vec();
        for x in out.iter_mut().take(self.dim_p) {
            *x = 0.0;
        }
        out
    }
}

fn cmat_from_real(n: usize, rows: &[f64]) -> CMat {
    CMat::from_fn(n, n, |i, j| Complex64::new(rows[i * n + j], 0.0))
}

fn cmat_from_complex(n: usize, rows: &[Complex64]) -> CMat {
    CMat::from_fn(n, n, |i, j| rows[i * n + j])
}

/// Build a catalog algebra.
///
/// Supported names: `sl2r`, `sl2c_real`, `sl3r`. The basis matrices are the
/// standard ones scaled by 1/√B_scale so that ⟨·,·⟩-orthonormality holds for
/// every B_scale > 0.
pub fn build_catalog(name: &str, b_scale: f64) -> Result<ReductiveAlgebra> {
    if b_scale <= 0.0 {
        return Err(Error::InvalidInput(format!(
            "B_scale must be positive, got {b_scale}"
        )));
    }
    let s = 1.0 / b_scale.sqrt();
    let i = Complex64::new(0.0, 1.0);
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);

    let (dim_p, dim_k, rep_dim, complex_entries, mut basis): (usize, usize, usize, bool, Vec<CMat>) =
        match name {
            "sl2r" => {
                let r2 = 1.0 / 2f64.sqrt();
                let p1 = cmat_from_real(2, &[r2, 0.0, 0.0, -r2]);
                let p2 = cmat_from_real(2, &[0.0, r2, r2, 0.0]);
                let k1 = cmat_from_real(2, &[0.0, r2, -r2, 0.0]);
                (2, 1, 2, false, vec![p1, p2, k1])
            }
            "sl2c_real" => {
                // p_j = s_j/√2 (hermitian traceless), e_j = i s_j/√2 (su(2))
                let r2 = 1.0 / 2f64.sqrt();
                let s1 = cmat_from_complex(2, &[zero, one, one, zero]);
                let s2 = cmat_from_complex(2, &[zero, -i, i, zero]);
                let s3 = cmat_from_complex(2, &[one, zero, zero, -one]);
                let paulis = [s1, s2, s3];
                let mut b = Vec::new();
                for sj in &paulis {
                    b.push(sj.map(|x| x * Complex64::new(r2, 0.0)));
                }
                for sj in &paulis {
                    b.push(sj.map(|x| x * i * Complex64::new(r2, 0.0)));
                }
                (3, 3, 2, true, b)
            }
            "sl3r" => {
                // p: symmetric traceless 3x3; k: so(3)
                let r2 = 1.0 / 2f64.sqrt();
                let r6 = 1.0 / 6f64.sqrt();
                let mut b = Vec::new();
                // diagonal part: two orthonormal traceless diagonals
                b.push(cmat_from_real(
                    3,
                    &[r2, 0.0, 0.0, 0.0, -r2, 0.0, 0.0, 0.0, 0.0],
                ));
                b.push(cmat_from_real(
                    3,
                    &[r6, 0.0, 0.0, 0.0, r6, 0.0, 0.0, 0.0, -2.0 * r6],
                ));
                // symmetric off-diagonals
                b.push(cmat_from_real(3, &[0.0, r2, 0.0, r2, 0.0, 0.0, 0.0, 0.0, 0.0]));
                b.push(cmat_from_real(3, &[0.0, 0.0, r2, 0.0, 0.0, 0.0, r2, 0.0, 0.0]));
                b.push(cmat_from_real(3, &[0.0, 0.0, 0.0, 0.0, 0.0, r2, 0.0, r2, 0.0]));
                // so(3)
                b.push(cmat_from_real(3, &[0.0, r2, 0.0, -r2, 0.0, 0.0, 0.0, 0.0, 0.0]));
                b.push(cmat_from_real(3, &[0.0, 0.0, r2, 0.0, 0.0, 0.0, -r2, 0.0, 0.0]));
                b.push(cmat_from_real(3, &[0.0, 0.0, 0.0, 0.0, 0.0, r2, 0.0, -r2, 0.0]));
                (5, 3, 3, false, b)
            }
            other => return Err(Error::UnknownCatalog(other.to_string())),
        };

    for m in basis.iter_mut() {
        *m = m.map(|x| x * Complex64::new(s, 0.0));
    }

    let dim = dim_p + dim_k;
    let mut alg = ReductiveAlgebra {
        name: name.to_string(),
        dim_p,
        dim_k,
        basis,
        bracket_table: vec![vec![vec![0.0; dim]; dim]; dim],
        b_matrix: RMat::zeros(dim, dim),
        theta: RMat::zeros(dim, dim),
        b_scale,
        rep_dim,
        complex_entries,
    };

    // θ and B in the basis
    for idx in 0..dim {
        alg.theta[(idx, idx)] = if idx < dim_p { -1.0 } else { 1.0 };
        alg.b_matrix[(idx, idx)] = if idx < dim_p { 1.0 } else { -1.0 };
    }

    // structure constants from the matrix brackets
    for a in 0..dim {
        for b in 0..dim {
            let comm = &alg.basis[a] * &alg.basis[b] - &alg.basis[b] * &alg.basis[a];
            let coords = alg.coords_of(&comm);
            // verify the bracket really lies in the span
            let back = alg.matrix_of(&coords);
            if (&back - &comm).norm() > 1e-10 {
                return Err(Error::Invariant(format!(
                    "bracket [e{a}, e{b}] left the basis span"
                )));
            }
            alg.bracket_table[a][b] = coords;
        }
    }

    Ok(alg)
}

/// Casimir trace constants of a catalog algebra.
#[derive(Debug, Clone, Copy)]
pub struct CasimirConstants {
    /// Tr^p[C^{k,p}]
    pub tr_p_ckp: f64,
    /// Tr^k[C^{k,k}]
    pub tr_k_ckk: f64,
    /// B*(κ,κ) = ½ Tr^p[C^{k,p}] + (1/6) Tr^k[C^{k,k}]
    pub bstar_kappa: f64,
}

/// Compute Tr^p[C^{k,p}], Tr^k[C^{k,k}] and B*(κ,κ) from structure constants.
pub fn casimir_constants(alg: &ReductiveAlgebra) -> CasimirConstants {
    let dim = alg.dim();
    let mut ckp = RMat::zeros(alg.dim_p, alg.dim_p);
    let mut ckk = RMat::zeros(alg.dim_k, alg.dim_k);
    for a in alg.dim_p..dim {
        let mut e = vec![0.0; dim];
        e[a] = 1.0;
        let ad = alg.ad(&e);
        let ad2 = &ad * &ad;
        for i in 0..alg.dim_p {
            for j in 0..alg.dim_p {
                ckp[(i, j)] += ad2[(i, j)];
            }
        }
        for i in 0..alg.dim_k {
            for j in 0..alg.dim_k {
                ckk[(i, j)] += ad2[(alg.dim_p + i, alg.dim_p + j)];
            }
        }
    }
    let tr_p_ckp = ckp.trace();
    let tr_k_ckk = ckk.trace();
    CasimirConstants {
        tr_p_ckp,
        tr_k_ckk,
        bstar_kappa: 0.5 * tr_p_ckp + tr_k_ckk / 6.0,
    }
}

/// Residual report for the structural invariants of an algebra.
#[derive(Debug, Clone)]
pub struct AlgebraReport {
    pub theta_involution: f64,
    pub b_theta_invariance: f64,
    pub b_ad_invariance: f64,
    pub jacobi: f64,
    pub cartan_inclusions: f64,
    pub definiteness_ok: bool,
}

impl AlgebraReport {
    /// Largest residual across all checks.
    pub fn max_residual(&self) -> f64 {
        self.theta_involution
            .max(self.b_theta_invariance)
            .max(self.b_ad_invariance)
            .max(self.jacobi)
            .max(self.cartan_inclusions)
    }
}

/// Check all ReductiveAlgebra invariants and report max residuals.
pub fn verify_algebra(alg: &ReductiveAlgebra) -> AlgebraReport {
    let dim = alg.dim();
    let id = RMat::identity(dim, dim);

    let theta_involution = (&alg.theta * &alg.theta - &id).norm();

    // B(θx, θy) = B(x, y)
    let b_theta = (alg.theta.transpose() * &alg.b_matrix * &alg.theta - &alg.b_matrix).norm();

    // B(ad(x)y, z) + B(y, ad(x)z) = 0 for basis x
    let mut b_ad = 0.0_f64;
    for a in 0..dim {
        let mut e = vec![0.0; dim];
        e[a] = 1.0;
        let ad = alg.ad(&e);
        let resid = (ad.transpose() * &alg.b_matrix + &alg.b_matrix * &ad).norm();
        b_ad = b_ad.max(resid);
    }

    // Jacobi on all basis triples
    let mut jac = 0.0_f64;
    for a in 0..dim {
        let ea: Vec<f64> = (0..dim).map(|i| if i == a { 1.0 } else { 0.0 }).collect();
        for b in 0..dim {
            let eb: Vec<f64> = (0..dim).map(|i| if i == b { 1.0 } else { 0.0 }).collect();
            for c in 0..dim {
                let ec: Vec<f64> = (0..dim).map(|i| if i == c { 1.0 } else { 0.0 }).collect();
                let t1 = alg.bracket(&ea, &alg.bracket(&eb, &ec));
                let t2 = alg.bracket(&eb, &alg.bracket(&ec, &ea));
                let t3 = alg.bracket(&ec, &alg.bracket(&ea, &eb));
                let r: f64 = (0..dim)
                    .map(|i| (t1[i] + t2[i] + t3[i]).powi(2))
                    .sum::<f64>()
                    .sqrt();
                jac = jac.max(r);
            }
        }
    }

    // [k,p] ⊂ p, [k,k] ⊂ k, [p,p] ⊂ k
    let mut incl = 0.0_f64;
    for a in 0..dim {
        for b in 0..dim {
            let v = &alg.bracket_table[a][b];
            let in_p = a < alg.dim_p;
            let in_p2 = b < alg.dim_p;
            // where must the bracket live?
            let target_p = in_p != in_p2; // mixed → p
            for (k, vk) in v.iter().enumerate() {
                let k_in_p = k < alg.dim_p;
                if k_in_p != target_p {
                    incl = incl.max(vk.abs());
                }
            }
        }
    }

    // definiteness on the matrix level
    let mut definiteness_ok = true;
    for (idx, b) in alg.basis.iter().enumerate() {
        let v = alg.b_form(b, b);
        if idx < alg.dim_p && v <= 0.0 {
            definiteness_ok = false;
        }
        if idx >= alg.dim_p && v >= 0.0 {
            definiteness_ok = false;
        }
    }

    AlgebraReport {
        theta_involution,
        b_theta_invariance: b_theta,
        b_ad_invariance: b_ad,
        jacobi: jac,
        cartan_inclusions: incl,
        definiteness_ok,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_dimensions() {
        let a = build_catalog("sl2r", 1.0).unwrap();
        assert_eq!((a.dim_p, a.dim_k), (2, 1));
        let b = build_catalog("sl2c_real", 1.0).unwrap();
        assert_eq!((b.dim_p, b.dim_k), (3, 3));
        let c = build_catalog("sl3r", 1.0).unwrap();
        assert_eq!((c.dim_p, c.dim_k), (5, 3));
    }

    #[test]
    fn unknown_name_rejected() {
        assert!(build_catalog("e8", 1.0).is_err());
        assert!(build_catalog("sl2r", -1.0).is_err());
    }

    #[test]
    fn all_invariants_tight() {
        for name in ["sl2r", "sl2c_real", "sl3r"] {
            for b in [1.0, 2.0, 0.5] {
                let alg = build_catalog(name, b).unwrap();
                let rep = verify_algebra(&alg);
                assert!(
                    rep.max_residual() < 1e-12,
                    "{name} b={b}: residual {}",
                    rep.max_residual()
                );
                assert!(rep.definiteness_ok);
            }
        }
    }

    #[test]
    fn perturbed_bracket_flagged() {
        let mut alg = build_catalog("sl3r", 1.0).unwrap();
        alg.bracket_table[0][3][1] += 1e-3;
        let rep = verify_algebra(&alg);
        assert!(rep.jacobi > 1e-6 || rep.b_ad_invariance > 1e-6);
    }

    #[test]
    fn flipped_theta_flagged() {
        let mut alg = build_catalog("sl2r", 1.0).unwrap();
        alg.theta[(0, 0)] = 1.0; // pretend e1 ∈ k
        let rep = verify_algebra(&alg);
        assert!(rep.b_theta_invariance > 1e-6);
    }

    #[test]
    fn sl2r_casimir_values() {
        // Oracle: ad(e3)²|p = -2·Id on the 2-dim p, so Tr^p[C^{k,p}] = -4;
        // k is abelian so Tr^k[C^{k,k}] = 0 and B*(κ,κ) = -2.
        let alg = build_catalog("sl2r", 1.0).unwrap();
        let c = casimir_constants(&alg);
        assert!((c.tr_p_ckp - (-4.0)).abs() < 1e-12);
        assert!(c.tr_k_ckk.abs() < 1e-14);
        assert!((c.bstar_kappa - (-2.0)).abs() < 1e-12);
    }

    #[test]
    fn casimir_scaling_law() {
        // B ↦ 2B sends B*(κ,κ) ↦ B*(κ,κ)/2 (verified against the direct
        // structure-constant summation at both scales).
        for name in ["sl2r", "sl2c_real", "sl3r"] {
            let c1 = casimir_constants(&build_catalog(name, 1.0).unwrap());
            let c2 = casimir_constants(&build_catalog(name, 2.0).unwrap());
            assert!((c2.bstar_kappa - 0.5 * c1.bstar_kappa).abs() < 1e-12);
        }
    }

    #[test]
    fn sl2c_casimir_values() {
        // computed by hand from [e_i,e_j] = -√2 ε_{ijk} e_k structure
        let alg = build_catalog("sl2c_real", 1.0).unwrap();
        let c = casimir_constants(&alg);
        assert!((c.tr_p_ckp - (-12.0)).abs() < 1e-11);
        assert!((c.tr_k_ckk - (-12.0)).abs() < 1e-11);
        assert!((c.bstar_kappa - (-8.0)).abs() < 1e-11);
    }

    #[test]
    fn ad_antisymmetric_on_p_for_k_elements() {
        let alg = build_catalog("sl3r", 1.0).unwrap();
        let mut y = vec![0.0; alg.dim()];
        y[alg.dim_p] = 0.7;
        y[alg.dim_p + 2] = -0.3;
        let ad = alg.ad(&y);
        let p = alg.dim_p;
        for i in 0..p {
            for j in 0..p {
                assert!((ad[(i, j)] + ad[(j, i)]).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn ad_zero_is_zero() {
        let alg = build_catalog("sl2r", 1.0).unwrap();
        let ad = alg.ad(&vec![0.0; 3]);
        assert!(ad.norm() == 0.0);
    }

    #[test]
    fn ad_is_a_representation() {
        // ad([x,y]) = [ad x, ad y] on random pairs
        let alg = build_catalog("sl3r", 1.0).unwrap();
        let x: Vec<f64> = (0..8).map(|i| ((i * 7 + 3) % 5) as f64 * 0.1 - 0.2).collect();
        let y: Vec<f64> = (0..8).map(|i| ((i * 3 + 1) % 7) as f64 * 0.1 - 0.3).collect();
        let lhs = alg.ad(&alg.bracket(&x, &y));
        let rhs = alg.ad(&x) * alg.ad(&y) - alg.ad(&y) * alg.ad(&x);
        assert!((lhs - rhs).norm() < 1e-12);
    }
}
