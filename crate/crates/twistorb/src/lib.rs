//! Numerical evaluation of semisimple twisted orbital integrals of heat
//! operators on symmetric spaces X = G/K of real reductive matrix groups.
//!
//! The library is organised around the explicit geometric formula
//!
//! ```text
//! Tr^[γσ][exp(-t L^X_A)] = e^{-|a|²/2t} (2πt)^{-p/2}
//!     ∫_{k_σ(γ)} J_{γσ}(Y) Tr^E[ρ(k⁻¹σ) e^{-iρ(Y) - tA}] e^{-|Y|²/2t} dY/(2πt)^{q/2}
//! ```
//!
//! for a semisimple twisted isometry γσ with normal form γ = eᵃk⁻¹,
//! Ad(k)a = σa, together with the identities that follow from it:
//! Dirac and de Rham specialisations, equivariant index densities,
//! twisted trace-formula assembly, twisted character asymptotics, and the
//! leading term of equivariant analytic-torsion growth.
//!
//! Module map:
//! * [`liecore`] — exact structure layer: catalog groups, brackets, B, θ, Casimirs.
//! * [`symspace`] — geometry of X and of the minimising set X(γσ); the
//!   brute-force orbital oracle.
//! * [`reps`] — finite-dimensional σ-twisted representations, twisted
//!   characters, fixed-point data on flag manifolds.
//! * [`orbital`] — the J-function and the heat / Dirac / de Rham / index /
//!   wave evaluators.
//! * [`assembly`] — class ledgers, the twisted trace formula, index
//!   integrality screens.
//! * [`torsion`] — exterior-algebra engine, Duistermaat–Heckman orbit
//!   integrals, e_t/d_t forms, W-invariants and torsion leading terms.
//!
//! All heavy types are immutable after construction and all evaluators are
//! pure functions, so values can be shared freely across threads.

pub mod assembly;
pub mod error;
pub mod liecore;
pub mod numerics;
pub mod oracles;
pub mod orbital;
pub mod reps;
pub mod symspace;
pub mod torsion;

pub use error::{Error, Result};

/// Library version embedded in every emitted result record.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Cap on rayon parallelism, read once from `TWISTORB_THREADS`.
pub fn configure_threads() {
    if let Ok(s) = std::env::var("TWISTORB_THREADS") {
        if let Ok(n) = s.parse::<usize>() {
            if n >= 1 {
                // Ignore the error if a global pool was already installed.
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
        }
    }
}
