//! Exact structure layer: catalog reductive matrix groups with their Cartan
//! data, brackets, bilinear forms and Casimir constants.
//!
//! A catalog algebra stores an orthonormal basis e₁..e_m of p and
//! e_{m+1}..e_{m+n} of k for the scalar product ⟨·,·⟩ = -B(·,θ·), with
//! B(X,Y) = B_scale · Re Tr(XY) on the defining representation and
//! θX = -X^H. Everything downstream (J-functions, heat formulas, torsion
//! forms) is expressed in this basis, so the normalisation B_scale travels
//! with every result record.

mod algebra;
mod config;
mod group;

pub use algebra::{
    build_catalog, casimir_constants, verify_algebra, AlgebraReport, CasimirConstants,
    ReductiveAlgebra,
};
pub use config::{parse_group_config, parse_matrix as parse_matrix_pub, GroupConfig};
pub use group::{global_cartan, Automorphism, GroupElement, GroupMap, SigmaOrder, TwistedElement};
