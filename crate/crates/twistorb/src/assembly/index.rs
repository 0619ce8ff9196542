//! Equivariant index assembly: the Lefschetz sum over elliptic classes
//! Σ Vol · [Â^{γσ} ch^{γσ}]^max, with an integrality defect report.

use num_complex::Complex64;

use super::ledger::DecomposedClass;
use crate::error::{Error, Result};
use crate::liecore::{Automorphism, ReductiveAlgebra};
use crate::orbital::{elliptic_index_density, JEvaluator};
use crate::reps::Irrep;

/// Result of an equivariant index evaluation.
#[derive(Debug, Clone)]
pub struct IndexReport {
    pub value: Complex64,
    pub nearest_integer: i64,
    /// |value - nearest integer| (genuine ledgers give an integer).
    pub defect: f64,
    /// Classes skipped because they are nonelliptic (contribute 0).
    pub skipped: Vec<String>,
    pub per_class: Vec<(String, Complex64)>,
}

/// Σ over elliptic classes of Vol · elliptic_index_density.
pub fn equivariant_index(
    alg: &ReductiveAlgebra,
    sigma: &Automorphism,
    classes: &[DecomposedClass],
    irrep: &Irrep,
) -> Result<IndexReport> {
    if alg.dim_p % 2 != 0 {
        return Err(Error::InvalidInput(
            "equivariant index needs even dim p (spin hypotheses)".into(),
        ));
    }
    if sigma.orientation_on_p(alg) < 0.0 {
        return Err(Error::InvalidInput(
            "σ must preserve the orientation of p".into(),
        ));
    }
    let mut value = Complex64::new(0.0, 0.0);
    let mut skipped = Vec::new();
    let mut per_class = Vec::new();
    for dc in classes {
        if !dc.sd.is_elliptic() {
            skipped.push(dc.entry.id.clone());
            continue;
        }
        let je = JEvaluator::new(alg, sigma, &dc.sd, &dc.cz)?;
        let d = elliptic_index_density(alg, &je, irrep)?;
        let contrib = d.value * Complex64::new(dc.entry.volume, 0.0);
        per_class.push((dc.entry.id.clone(), contrib));
        value += contrib;
    }
    let nearest_integer = value.re.round() as i64;
    let defect =
        ((value.re - nearest_integer as f64).powi(2) + value.im.powi(2)).sqrt();
    Ok(IndexReport { value, nearest_integer, defect, skipped, per_class })
}
