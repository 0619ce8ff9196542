//! The twisted trace formula assembled from a class ledger:
//!
//!   Tr[σ^Z exp(-t L^Z)] = Σ_classes Vol(Γ ∩ Z_σ(γ)\X(γσ)) · Tr^[γσ][exp(-t L^X)].
//!
//! Classes are never auto-enumerated; when counting constants (C, c) are
//! supplied, the report carries an unaccounted-tail bound of the shape
//! C·exp(cR)·e^{-R²/(2t)} for omitted classes of displacement ≥ R.

use num_complex::Complex64;

use super::ledger::DecomposedClass;
use crate::error::Result;
use crate::liecore::{Automorphism, ReductiveAlgebra};
use crate::numerics::matfun::CMat;
use crate::orbital::{heat_orbital, HeatQuery, JEvaluator};
use crate::reps::Irrep;

/// Optional tail policy: user-supplied counting constants.
#[derive(Debug, Clone, Copy)]
pub struct TailBound {
    pub count_c: f64,
    pub count_rate: f64,
    pub radius: f64,
}

/// Per-class contributions and totals of a twisted trace-formula evaluation.
#[derive(Debug, Clone)]
pub struct TraceReport {
    pub t: f64,
    pub per_class: Vec<(String, Complex64)>,
    pub total: Complex64,
    pub quad_error: f64,
    /// C·exp(c·R - R²/2t) when counting constants were supplied.
    pub tail_bound: Option<f64>,
}

/// Evaluate the geometric side of the twisted trace formula.
pub fn trace_heat(
    alg: &ReductiveAlgebra,
    sigma: &Automorphism,
    classes: &[DecomposedClass],
    irrep: &Irrep,
    a_matrix: &CMat,
    t: f64,
    tail: Option<TailBound>,
) -> Result<TraceReport> {
    let mut per_class = Vec::with_capacity(classes.len());
    let mut quad_error = 0.0;
    for dc in classes {
        let je = JEvaluator::new(alg, sigma, &dc.sd, &dc.cz)?;
        let hq = HeatQuery::new(t, a_matrix.clone(), irrep)?;
        let r = heat_orbital(&je, &hq)?;
        per_class.push((
            dc.entry.id.clone(),
            r.value * Complex64::new(dc.entry.volume, 0.0),
        ));
        quad_error += r.quad_error * dc.entry.volume;
    }
    // compensated (Kahan) summation of the ordered contributions
    let mut total = Complex64::new(0.0, 0.0);
    let mut comp = Complex64::new(0.0, 0.0);
    for (_, v) in &per_class {
        let y = v - comp;
        let t_new = total + y;
        comp = (t_new - total) - y;
        total = t_new;
    }
    let tail_bound = tail.map(|tb| {
        tb.count_c * (tb.count_rate * tb.radius - tb.radius * tb.radius / (2.0 * t)).exp()
    });
    Ok(TraceReport { t, per_class, total, quad_error, tail_bound })
}
