//! The core evaluator: the function J_{γσ}, analytic square roots, the main
//! heat-kernel orbital-integral formula, and its Dirac / de Rham / index /
//! wave specialisations.

mod density;
mod derham;
mod dirac;
mod heat;
mod jfunc;
mod wave;

pub use density::{elliptic_index_density, euler_max, DensityResult};
pub use derham::derham_orbital_supertrace;
pub use dirac::{dirac_orbital_supertrace, spin_supertrace_at_zero, CliffordModel};
pub use heat::{heat_orbital, HeatQuery, OrbitalResult};
pub use jfunc::{a_hat, JEvaluator};
pub use wave::{wave_support_probe, WaveWindow};
