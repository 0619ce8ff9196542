//! Geometry of X = G/K and of the minimising set X(γσ): distances,
//! displacement minimisation, semisimple normal forms, twisted centralizers,
//! the normal-coordinate density r(f), and the brute-force orbital oracle.

mod brute;
mod centralizer;
mod decompose;
mod density;
mod point;

pub use brute::{brute_force_orbital, BruteResult, QuadSpec};

/// Embed coordinates given in an orthonormal sub-basis into ambient algebra
/// coordinates.
pub fn embed_in(basis: &[Vec<f64>], coords: &[f64], dim: usize) -> Vec<f64> {
    density::embed(basis, coords, dim)
}
pub use centralizer::{twisted_centralizer, CentralizerData};
pub use decompose::{
    displacement, semisimple_decompose, twisted_action, twisted_conjugate, MinimizerOptions,
    SemisimpleData,
};
pub use density::{hessian_displacement, hessian_fd, normal_density};
pub use point::{distance, log_map, SpacePoint};
