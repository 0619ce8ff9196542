//! Points of X = G/K represented by coset representatives.

use crate::error::Result;
use crate::liecore::{global_cartan, GroupElement, ReductiveAlgebra};

/// A point p·g of the symmetric space X = G/K.
#[derive(Debug, Clone)]
pub struct SpacePoint {
    pub coset_rep: GroupElement,
}

impl SpacePoint {
    pub fn new(coset_rep: GroupElement) -> Self {
        SpacePoint { coset_rep }
    }

    /// The basepoint p·1.
    pub fn basepoint(alg: &ReductiveAlgebra) -> Self {
        SpacePoint::new(GroupElement::identity(alg))
    }

    /// Whether two representatives define the same coset, via the a-part of
    /// the global Cartan decomposition of g⁻¹g'.
    pub fn same_point(&self, alg: &ReductiveAlgebra, other: &SpacePoint) -> Result<bool> {
        let h = self.coset_rep.inverse().mul(&other.coset_rep);
        let (a, _) = global_cartan(alg, &h)?;
        Ok(alg.norm(&a) < 1e-10)
    }
}

/// Riemannian distance d(x, y) = |a| where g⁻¹h = exp(a)·k.
pub fn distance(alg: &ReductiveAlgebra, x: &SpacePoint, y: &SpacePoint) -> Result<f64> {
    let h = x.coset_rep.inverse().mul(&y.coset_rep);
    let (a, _) = global_cartan(alg, &h)?;
    Ok(alg.norm(&a))
}

/// Riemannian logarithm of y at x, expressed in the g-frame of x (an element
/// of p, identified with T_x X).
pub fn log_map(alg: &ReductiveAlgebra, x: &SpacePoint, y: &SpacePoint) -> Result<Vec<f64>> {
    let h = x.coset_rep.inverse().mul(&y.coset_rep);
    let (a, _) = global_cartan(alg, &h)?;
    Ok(a)
}
