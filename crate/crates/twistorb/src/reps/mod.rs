//! Finite-dimensional unitary representations with σ-structure: matrix
//! models, Casimir actions, twisted characters, and character asymptotics
//! with Duistermaat–Heckman fixed-point data.

mod asympt;
mod compact;
mod fixed_point;
mod irrep;

pub use asympt::{char_asymptotics_check, AsymptoticsReport};
pub use compact::{CompactForm, WeightData};
pub use fixed_point::{fixed_point_data, FixedPointComponent, FixedPointData};
pub use irrep::{build_so2_doublet, build_sym_irrep, sigma_extension_constant, twisted_character, Irrep};
