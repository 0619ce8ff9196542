//! W-invariant engine and equivariant analytic-torsion asymptotics:
//! exterior-algebra arithmetic, Duistermaat–Heckman orbit integrals, the
//! forms e_t/d_t, [W]^max, and the leading-term assembly.

pub mod exterior;
mod forms;
mod leading;
mod orbit;
mod winv;

pub use exterior::ExteriorElement;
pub use forms::{et_dt, sigma_a2_terms, EtDt, SigmaA2Terms};
pub use leading::{
    elliptic_weighted_asymptotics, torsion_leading, AsymptoticsErrors, TorsionAsymptotics,
};
pub use orbit::{catalog as orbit_catalog, dh_integral, nondegeneracy_check, u_coords, Nondegeneracy, OrbitModel, OrbitPoint};
pub use winv::{w_invariant, WResult};
