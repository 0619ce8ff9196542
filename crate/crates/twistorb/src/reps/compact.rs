//! The compact form u = i·p ⊕ k of a catalog algebra, with numeric weight
//! and root extraction from matrix models.
//!
//! Elements of u are stored as pairs (re, im) of coordinate vectors over the
//! g-basis, meaning re + i·im in g ⊗ C. Weights follow the analytic
//! normalisation in which a representation operator ρ(h) has eigenvalues
//! 2πi·⟨weight, h⟩ for h in the Cartan subalgebra.

use nalgebra::SymmetricEigen;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::liecore::ReductiveAlgebra;
use crate::numerics::matfun::CMat;

/// Orthonormal basis of the compact form with a chosen maximal torus.
#[derive(Debug, Clone)]
pub struct CompactForm {
    /// Basis vectors of u as (re, im) coordinates over the g-basis.
    /// The first dim_p entries are i·(p-basis), the rest the k-basis.
    pub basis: Vec<(Vec<f64>, Vec<f64>)>,
    /// Indices into `basis` spanning the chosen Cartan subalgebra.
    pub cartan: Vec<usize>,
}

impl CompactForm {
    /// Build the compact form of a catalog algebra with its standard torus.
    pub fn new(alg: &ReductiveAlgebra) -> Result<Self> {
        let dim = alg.dim();
        let mut basis = Vec::with_capacity(dim);
        for i in 0..alg.dim_p {
            let mut im = vec![0.0; dim];
            im[i] = 1.0;
            basis.push((vec![0.0; dim], im));
        }
        for i in alg.dim_p..dim {
            let mut re = vec![0.0; dim];
            re[i] = 1.0;
            basis.push((re, vec![0.0; dim]));
        }
        let cartan = match alg.name.as_str() {
            // u(sl2r) = su(2): torus generated by the k-rotation
            "sl2r" => vec![2usize],
            // u(sl2c_real) = su(2)⊕su(2): torus = span{i·p₃, e₃}
            "sl2c_real" => vec![2usize, 5usize],
            // u(sl3r) = su(3): torus = the two commuting i·(diagonal) directions
            "sl3r" => vec![0usize, 1usize],
            other => return Err(Error::UnknownCatalog(other.to_string())),
        };
        Ok(CompactForm { basis, cartan })
    }

    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    /// ρ-action of the a-th Cartan generator given ρ on the g-basis.
    pub fn rho_cartan(&self, rho_basis: &[CMat], a: usize) -> CMat {
        let (re, im) = &self.basis[self.cartan[a]];
        rho_combination(rho_basis, re, im)
    }

    /// ad-action of the a-th Cartan generator on g ⊗ C.
    pub fn ad_cartan(&self, alg: &ReductiveAlgebra, a: usize) -> CMat {
        let (re, im) = &self.basis[self.cartan[a]];
        let ad_re = alg.ad(re);
        let ad_im = alg.ad(im);
        CMat::from_fn(alg.dim(), alg.dim(), |i, j| {
            Complex64::new(ad_re[(i, j)], ad_im[(i, j)])
        })
    }
}

/// ρ(re + i·im) with ρ given on the g-basis.
pub fn rho_combination(rho_basis: &[CMat], re: &[f64], im: &[f64]) -> CMat {
    let n = rho_basis[0].nrows();
    let mut out = CMat::zeros(n, n);
    for (idx, r) in rho_basis.iter().enumerate() {
        let c = Complex64::new(re[idx], im[idx]);
        if c.norm() > 0.0 {
            out += r.map(|x| x * c);
        }
    }
    out
}

/// Multiplicities of joint eigenvalues: weights of a representation or roots
/// of the adjoint action, in the 2π-convention.
#[derive(Debug, Clone)]
pub struct WeightData {
    /// Weight coordinate vectors over the Cartan basis.
    pub weights: Vec<Vec<f64>>,
    /// Positive roots for a fixed generic positivity functional.
    pub positive_roots: Vec<Vec<f64>>,
    /// Half-sum of the positive roots.
    pub rho_u: Vec<f64>,
    /// Highest weight (maximising the positivity functional).
    pub highest: Vec<f64>,
}

/// Simultaneously diagonalise commuting anti-Hermitian operators and return
/// their joint spectra as 2π-normalised weight vectors.
pub fn joint_weights(ops: &[CMat]) -> Result<Vec<Vec<f64>>> {
    let n = ops[0].nrows();
    // iteratively refine eigenspaces
    let mut blocks: Vec<Vec<usize>> = vec![(0..n).collect()];
    let mut vectors = CMat::identity(n, n);
    let mut weight_coords = vec![vec![0.0; ops.len()]; n];

    for (a, op) in ops.iter().enumerate() {
        let iop = op.map(|x| x * Complex64::new(0.0, 1.0));
        let mut new_blocks = Vec::new();
        for block in &blocks {
            let m = block.len();
            // restrict i·op to the block: Hermitian
            let mut w = CMat::zeros(n, m);
            for (bj, &gj) in block.iter().enumerate() {
                for r in 0..n {
                    w[(r, bj)] = vectors[(r, gj)];
                }
            }
            let sub = w.adjoint() * &iop * &w;
            let herm_resid = (&sub - sub.adjoint()).norm();
            if herm_resid > 1e-7 * (1.0 + sub.norm()) {
                return Err(Error::Invariant(format!(
                    "operator {a} not anti-Hermitian on an eigenblock (resid {herm_resid:.2e})"
                )));
            }
            let sub = (&sub + sub.adjoint()).map(|x| x * Complex64::new(0.5, 0.0));
            let eig = SymmetricEigen::new(sub);
            // update the block columns of `vectors`
            let newcols = &w * &eig.eigenvectors;
            for (bj, &gj) in block.iter().enumerate() {
                for r in 0..n {
                    vectors[(r, gj)] = newcols[(r, bj)];
                }
                // i·ρ(h) has eigenvalue -2π·w, so w = -eig/(2π)
                weight_coords[gj][a] = -eig.eigenvalues[bj] / (2.0 * std::f64::consts::PI);
            }
            // split the block by eigenvalue clusters
            let mut used = vec![false; m];
            for bi in 0..m {
                if used[bi] {
                    continue;
                }
                let mut cluster = vec![block[bi]];
                used[bi] = true;
                for bj in (bi + 1)..m {
                    if !used[bj]
                        && (eig.eigenvalues[bi] - eig.eigenvalues[bj]).abs()
                            < 1e-8 * (1.0 + eig.eigenvalues[bi].abs())
                    {
                        cluster.push(block[bj]);
                        used[bj] = true;
                    }
                }
                new_blocks.push(cluster);
            }
        }
        blocks = new_blocks;
    }
    Ok(weight_coords)
}

/// Extract weights, roots, ρ_u and the highest weight of a representation
/// given by ρ on the g-basis.
pub fn weight_data(
    alg: &ReductiveAlgebra,
    u: &CompactForm,
    rho_basis: &[CMat],
) -> Result<WeightData> {
    let rho_h: Vec<CMat> = (0..u.rank()).map(|a| u.rho_cartan(rho_basis, a)).collect();
    let weights = joint_weights(&rho_h)?;

    let ad_h: Vec<CMat> = (0..u.rank()).map(|a| u.ad_cartan(alg, a)).collect();
    let roots_all = joint_weights(&ad_h)?;

    // generic positivity functional
    let xi: Vec<f64> = (0..u.rank())
        .map(|a| 1.0 + (a as f64 + 1.0) * 0.312_861)
        .collect();
    let pair = |w: &[f64]| -> f64 { w.iter().zip(&xi).map(|(a, b)| a * b).sum() };

    let mut positive_roots: Vec<Vec<f64>> = Vec::new();
    for r in &roots_all {
        let norm: f64 = r.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-9 && pair(r) > 0.0 {
            // dedupe
            if !positive_roots
                .iter()
                .any(|s| s.iter().zip(r).map(|(a, b)| (a - b).abs()).sum::<f64>() < 1e-8)
            {
                positive_roots.push(r.clone());
            }
        }
    }
    let rho_u: Vec<f64> = (0..u.rank())
        .map(|a| 0.5 * positive_roots.iter().map(|r| r[a]).sum::<f64>())
        .collect();
    let highest = weights
        .iter()
        .cloned()
        .max_by(|x, y| pair(x).partial_cmp(&pair(y)).unwrap())
        .unwrap_or_else(|| vec![0.0; u.rank()]);

    Ok(WeightData { weights, positive_roots, rho_u, highest })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liecore::build_catalog;

    #[test]
    fn su2_roots_from_sl2r() {
        let alg = build_catalog("sl2r", 1.0).unwrap();
        let u = CompactForm::new(&alg).unwrap();
        // adjoint rep: roots ±α with |α| = √2/(2π)
        let ad_h = u.ad_cartan(&alg, 0);
        let roots = joint_weights(&[ad_h]).unwrap();
        let mut nonzero: Vec<f64> = roots
            .iter()
            .map(|r| r[0])
            .filter(|x| x.abs() > 1e-9)
            .collect();
        nonzero.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert_eq!(nonzero.len(), 2);
        let expect = 2f64.sqrt() / (2.0 * std::f64::consts::PI);
        assert!((nonzero[1] - expect).abs() < 1e-10);
        assert!((nonzero[0] + expect).abs() < 1e-10);
    }
}
