//! Group elements, the global Cartan decomposition, and the automorphisms σ.

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::algebra::ReductiveAlgebra;
use crate::error::{Error, Result};
use crate::numerics::matfun::{expm, logm_hpd, CMat};

/// An element of a catalog group in its defining representation.
#[derive(Debug, Clone)]
pub struct GroupElement {
    pub matrix: CMat,
    pub group: String,
}

impl GroupElement {
    pub fn new(matrix: CMat, group: impl Into<String>) -> Self {
        GroupElement { matrix, group: group.into() }
    }

    pub fn identity(alg: &ReductiveAlgebra) -> Self {
        GroupElement::new(CMat::identity(alg.rep_dim, alg.rep_dim), alg.name.clone())
    }

    /// det - 1 residual of the defining relation.
    pub fn det_residual(&self) -> f64 {
        (self.matrix.clone().lu().determinant() - Complex64::new(1.0, 0.0)).norm()
    }

    pub fn mul(&self, other: &GroupElement) -> GroupElement {
        GroupElement::new(&self.matrix * &other.matrix, self.group.clone())
    }

    pub fn inverse(&self) -> GroupElement {
        let inv = self
            .matrix
            .clone()
            .lu()
            .try_inverse()
            .expect("group element must be invertible");
        GroupElement::new(inv, self.group.clone())
    }
}

/// How σ acts on group elements.
#[derive(Debug, Clone)]
pub enum GroupMap {
    Identity,
    /// The global Cartan involution g ↦ (g^H)^{-1}.
    Theta,
    /// Conjugation g ↦ m g m^{-1}.
    ConjBy(CMat),
    /// Entrywise complex conjugation (complex groups only).
    ComplexConj,
    /// j-fold iterate of another map.
    Power(Box<GroupMap>, u32),
}

/// Order of σ in Aut(G): finite with a known exponent, or not detected.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SigmaOrder {
    Finite(u32),
    Infinite,
}

/// An automorphism σ ∈ Σ: commutes with θ and preserves B.
///
/// Both the group-level action and the algebra-level matrix are stored and
/// cross-checked at construction; σ is never re-derived by differentiation.
#[derive(Debug, Clone)]
pub struct Automorphism {
    pub group_map: GroupMap,
    /// Action of σ on g in the algebra basis.
    pub algebra_matrix: DMatrix<f64>,
    pub order: SigmaOrder,
}

impl Automorphism {
    /// Construct σ from its group-level description, deriving and checking
    /// the algebra matrix.
    pub fn new(alg: &ReductiveAlgebra, group_map: GroupMap) -> Result<Self> {
        if matches!(group_map, GroupMap::ComplexConj) && !alg.complex_entries {
            return Err(Error::InvalidInput(
                "complex_conj is only meaningful for complex catalog groups".into(),
            ));
        }
        let dim = alg.dim();
        let mut m = DMatrix::<f64>::zeros(dim, dim);
        for j in 0..dim {
            let image = apply_map_matrix(&group_map, &alg.basis[j], true);
            let coords = alg.coords_of(&image);
            let back = alg.matrix_of(&coords);
            if (&back - &image).norm() > 1e-10 {
                return Err(Error::Invariant(
                    "σ does not preserve the algebra span".into(),
                ));
            }
            for i in 0..dim {
                m[(i, j)] = coords[i];
            }
        }

        // invariants: commutes with θ, preserves B
        let ct = (&m * &alg.theta - &alg.theta * &m).norm();
        if ct > 1e-12 {
            return Err(Error::Invariant(format!("σθ ≠ θσ, residual {ct:.3e}")));
        }
        let cb = (m.transpose() * &alg.b_matrix * &m - &alg.b_matrix).norm();
        if cb > 1e-12 {
            return Err(Error::Invariant(format!(
                "σ does not preserve B, residual {cb:.3e}"
            )));
        }

        // order detection on the algebra matrix
        let id = DMatrix::<f64>::identity(dim, dim);
        let mut pw = m.clone();
        let mut order = SigmaOrder::Infinite;
        for k in 1..=24u32 {
            if (&pw - &id).norm() < 1e-10 {
                order = SigmaOrder::Finite(k);
                break;
            }
            pw = &pw * &m;
        }

        let sigma = Automorphism { group_map, algebra_matrix: m, order };

        // compatibility: σ(exp Y) = exp(σY) on a few fixed sample vectors
        for seed in 0..3u64 {
            let y: Vec<f64> = (0..dim)
                .map(|i| (((i as u64 + 1) * (seed + 3) * 2654435761) % 1000) as f64 / 2500.0 - 0.2)
                .collect();
            let lhs = sigma.apply_group(&GroupElement::new(alg.exp_vec(&y), alg.name.clone()));
            let sy = sigma.apply_algebra(&y);
            let rhs = alg.exp_vec(&sy);
            if (&lhs.matrix - &rhs).norm() > 1e-10 {
                return Err(Error::Invariant(
                    "σ(exp Y) ≠ exp(σY): group and algebra actions disagree".into(),
                ));
            }
        }

        Ok(sigma)
    }

    pub fn identity(alg: &ReductiveAlgebra) -> Self {
        let dim = alg.dim();
        Automorphism {
            group_map: GroupMap::Identity,
            algebra_matrix: DMatrix::identity(dim, dim),
            order: SigmaOrder::Finite(1),
        }
    }

    /// σ applied to a group element.
    pub fn apply_group(&self, g: &GroupElement) -> GroupElement {
        GroupElement::new(apply_map_matrix(&self.group_map, &g.matrix, false), g.group.clone())
    }

    /// σ applied to algebra coordinates.
    pub fn apply_algebra(&self, y: &[f64]) -> Vec<f64> {
        let v = DMatrix::from_column_slice(y.len(), 1, y);
        let out = &self.algebra_matrix * v;
        out.column(0).iter().cloned().collect()
    }

    /// σ^j for a twisted element γσ^j.
    pub fn power_algebra(&self, j: i64) -> DMatrix<f64> {
        let dim = self.algebra_matrix.nrows();
        let mut out = DMatrix::<f64>::identity(dim, dim);
        if j == 0 {
            return out;
        }
        let base = if j > 0 {
            self.algebra_matrix.clone()
        } else {
            self.algebra_matrix
                .clone()
                .try_inverse()
                .expect("σ is invertible")
        };
        for _ in 0..j.unsigned_abs() {
            out = &out * &base;
        }
        out
    }

    /// The automorphism σ^j. Negative powers are reduced modulo the order
    /// when it is finite.
    pub fn power(&self, j: i64) -> Result<Automorphism> {
        if j == 1 {
            return Ok(self.clone());
        }
        let j_eff: u32 = match self.order {
            SigmaOrder::Finite(n) => (j.rem_euclid(n as i64)) as u32,
            SigmaOrder::Infinite => {
                if j < 0 {
                    return Err(Error::InvalidInput(
                        "negative σ-power of an infinite-order automorphism".into(),
                    ));
                }
                j as u32
            }
        };
        Ok(Automorphism {
            group_map: GroupMap::Power(Box::new(self.group_map.clone()), j_eff),
            algebra_matrix: self.power_algebra(j_eff as i64),
            order: self.order,
        })
    }

    /// Whether σ acts trivially.
    pub fn is_identity(&self) -> bool {
        let dim = self.algebra_matrix.nrows();
        (&self.algebra_matrix - DMatrix::<f64>::identity(dim, dim)).norm() < 1e-13
    }

    /// det of σ restricted to p: +1 preserves the orientation of p.
    pub fn orientation_on_p(&self, alg: &ReductiveAlgebra) -> f64 {
        let p = alg.dim_p;
        let block = self.algebra_matrix.view((0, 0), (p, p)).into_owned();
        block.lu().determinant()
    }
}

fn apply_map_matrix(map: &GroupMap, m: &CMat, algebra_level: bool) -> CMat {
    match map {
        GroupMap::Identity => m.clone(),
        GroupMap::Theta => {
            if algebra_level {
                // θX = -X^H on the Lie algebra
                m.adjoint().map(|x| -x)
            } else {
                m.adjoint()
                    .lu()
                    .try_inverse()
                    .expect("θ of an invertible element")
            }
        }
        GroupMap::ConjBy(c) => {
            let ci = c
                .clone()
                .lu()
                .try_inverse()
                .expect("conjugating matrix must be invertible");
            c * m * ci
        }
        GroupMap::ComplexConj => m.map(|x| x.conj()),
        GroupMap::Power(inner, j) => {
            let mut out = m.clone();
            for _ in 0..*j {
                out = apply_map_matrix(inner, &out, algebra_level);
            }
            out
        }
    }
}

/// A twisted element γσ^j of G^σ = G ⋊ Σ^σ.
#[derive(Debug, Clone)]
pub struct TwistedElement {
    pub gamma: GroupElement,
    pub sigma_power: i64,
}

impl TwistedElement {
    pub fn new(gamma: GroupElement, sigma_power: i64) -> Self {
        TwistedElement { gamma, sigma_power }
    }
}

/// Global Cartan decomposition g = exp(a)·k with a ∈ p, k ∈ K.
///
/// a comes from the HPD logarithm of g·g^H; the reconstruction residual is
/// checked to 1e-10.
pub fn global_cartan(alg: &ReductiveAlgebra, g: &GroupElement) -> Result<(Vec<f64>, GroupElement)> {
    let gm = &g.matrix;
    let p = gm * gm.adjoint();
    let log_p = logm_hpd(&p)?;
    let a_mat = log_p.map(|x| x * Complex64::new(0.5, 0.0));
    let a = alg.coords_of(&a_mat);
    // verify that a lies in p: projection must reproduce the matrix
    let back = alg.matrix_of(&a);
    if (&back - &a_mat).norm() > 1e-9 {
        return Err(Error::MatrixLog(
            "polar factor log left the p-span (corrupted input?)".into(),
        ));
    }
    for c in a.iter().skip(alg.dim_p) {
        if c.abs() > 1e-9 {
            return Err(Error::MatrixLog("polar log has a k-component".into()));
        }
    }
    let exp_a = expm(&a_mat);
    let exp_a_inv = exp_a
        .lu()
        .try_inverse()
        .ok_or_else(|| Error::MatrixLog("exp(a) not invertible".into()))?;
    let k_mat = exp_a_inv * gm;
    // residual
    let recon = alg.exp_vec(&a) * &k_mat;
    let resid = (&recon - gm).norm();
    if resid > 1e-10 * (1.0 + gm.norm()) {
        return Err(Error::MatrixLog(format!(
            "global Cartan reconstruction residual {resid:.3e}"
        )));
    }
    // k ∈ K: unitary in the defining representation
    let unit = (&k_mat * k_mat.adjoint() - CMat::identity(alg.rep_dim, alg.rep_dim)).norm();
    if unit > 1e-9 {
        return Err(Error::MatrixLog(format!("k-factor not unitary: {unit:.3e}")));
    }
    Ok((a, GroupElement::new(k_mat, g.group.clone())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liecore::build_catalog;

    #[test]
    fn cartan_of_identity() {
        let alg = build_catalog("sl2r", 1.0).unwrap();
        let (a, k) = global_cartan(&alg, &GroupElement::identity(&alg)).unwrap();
        assert!(alg.norm(&a) < 1e-12);
        assert!((k.matrix - CMat::identity(2, 2)).norm() < 1e-12);
    }

    #[test]
    fn cartan_of_pure_exponential() {
        let alg = build_catalog("sl2r", 1.0).unwrap();
        let a0 = vec![1.0 / 2f64.sqrt(), 0.0, 0.0]; // diag(1,-1)/2-ish direction
        let g = GroupElement::new(alg.exp_vec(&a0), "sl2r");
        let (a, k) = global_cartan(&alg, &g).unwrap();
        for i in 0..3 {
            assert!((a[i] - a0[i]).abs() < 1e-12);
        }
        assert!((k.matrix - CMat::identity(2, 2)).norm() < 1e-11);
    }

    #[test]
    fn cartan_roundtrip_random() {
        let alg = build_catalog("sl2c_real", 1.0).unwrap();
        for seed in 0..5 {
            let a0: Vec<f64> = (0..6)
                .map(|i| if i < 3 { 0.3 * ((seed * 7 + i) as f64).sin() } else { 0.0 })
                .collect();
            let k0: Vec<f64> = (0..6)
                .map(|i| if i >= 3 { 0.4 * ((seed * 3 + i) as f64).cos() } else { 0.0 })
                .collect();
            let g = GroupElement::new(alg.exp_vec(&a0) * alg.exp_vec(&k0), "sl2c_real");
            let (a, k) = global_cartan(&alg, &g).unwrap();
            let recon = alg.exp_vec(&a) * &k.matrix;
            assert!((recon - g.matrix).norm() < 1e-10);
            // a-part must match the original exactly (uniqueness of polar part)
            for i in 0..3 {
                assert!((a[i] - a0[i]).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn sigma_theta_on_sl2r() {
        let alg = build_catalog("sl2r", 1.0).unwrap();
        let s = Automorphism::new(&alg, GroupMap::Theta).unwrap();
        assert_eq!(s.order, SigmaOrder::Finite(2));
        // θ is -1 on p: orientation det = (-1)^2 = +1 for sl2r
        assert!((s.orientation_on_p(&alg) - 1.0).abs() < 1e-12);
        // block structure: p and k invariant
        for i in 0..2 {
            assert!((s.algebra_matrix[(i, 2)]).abs() < 1e-13);
            assert!((s.algebra_matrix[(2, i)]).abs() < 1e-13);
        }
    }

    #[test]
    fn sigma_complex_conj_on_sl2c() {
        let alg = build_catalog("sl2c_real", 1.0).unwrap();
        let s = Automorphism::new(&alg, GroupMap::ComplexConj).unwrap();
        assert_eq!(s.order, SigmaOrder::Finite(2));
        // conj fixes p1, p3 and e2; flips p2, e1, e3
        let expected = [1.0, -1.0, 1.0, -1.0, 1.0, -1.0];
        for (i, e) in expected.iter().enumerate() {
            assert!((s.algebra_matrix[(i, i)] - e).abs() < 1e-12);
        }
    }

    #[test]
    fn complex_conj_rejected_for_real_group() {
        let alg = build_catalog("sl2r", 1.0).unwrap();
        assert!(Automorphism::new(&alg, GroupMap::ComplexConj).is_err());
    }

    #[test]
    fn conj_by_o2_reflection() {
        let alg = build_catalog("sl2r", 1.0).unwrap();
        let refl = CMat::from_fn(2, 2, |i, j| {
            Complex64::new(if i == j { if i == 0 { 1.0 } else { -1.0 } } else { 0.0 }, 0.0)
        });
        let s = Automorphism::new(&alg, GroupMap::ConjBy(refl)).unwrap();
        assert_eq!(s.order, SigmaOrder::Finite(2));
        // reverses the rotation direction: acts by -1 on k
        assert!((s.algebra_matrix[(2, 2)] + 1.0).abs() < 1e-12);
    }
}
